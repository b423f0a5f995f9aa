#pragma once

#include <string>
#include <vector>

#include "streamlease/cost.hpp"
#include "streamlease/model.hpp"

namespace streamlease {

/// Site-to-site edge pointing from the strictly pricier site to the cheaper
/// one, compared at the reference load of one channel.
struct DirectionEdge {
  SiteId from;
  SiteId to;

  bool operator==(const DirectionEdge&) const = default;
};

/// A candidate move of one bundle from its most preferred site to a cheaper
/// site inside its top-k list, annotated with the preference degradation it
/// causes and the lease saving it buys.
struct MigrationVector {
  RegionId bundle;
  SiteId origin;       // the bundle's most preferred site
  SiteId target;       // strictly cheaper site within the bundle's top-k
  double degradation;  // demand-weighted preference loss, relative; >= 0
  Money saving;        // per-bundle lease saving; always > 0

  bool operator==(const MigrationVector&) const = default;
};

/// The service migration graph: bundle vertices with outgoing vectors only,
/// plus the acyclic price backbone between sites.
struct MigrationGraph {
  std::vector<SiteId> sites;
  std::vector<RegionId> bundles;  // non-inert bundles only
  std::vector<DirectionEdge> direction_edges;
  std::vector<MigrationVector> vectors;

  bool operator==(const MigrationGraph&) const = default;
};

/// Price used to orient direction edges: lease cost of a single channel.
/// Fixing one comparison point keeps the site ordering load-independent.
Money reference_price(const CloudSite& site);

/// One edge for every ordered site pair with strictly decreasing reference
/// price; ties produce no edge, so the relation is a strict partial order.
std::vector<DirectionEdge> build_direction_edges(const Scenario& s);

/// All migration vectors of the scenario. A vector exists for bundle b and
/// site t when t is in b's top-k, the direction edge (top site -> t) exists,
/// and the move saves money at b's actual stream count.
std::vector<MigrationVector> generate_migration_vectors(const Scenario& s);

MigrationGraph build_migration_graph(const Scenario& s);

/// Plain-text adjacency listing, one line per vertex, edge and vector.
std::string dump_graph(const MigrationGraph& g);

}  // namespace streamlease
