#pragma once

#include <set>
#include <string_view>
#include <vector>

#include "cpnet/model.hpp"

namespace cpnet {

/// Expands an unconditional relation of CPT(owner) into one copy per
/// (feature, value) pair of `scope`, each conditioned on that single
/// assignment. Scope features are visited in net declaration order, values
/// in domain order. Conditioned relations come back unchanged.
std::vector<PreferenceRelation> unfold_relation(const PreferenceRelation& rel, std::string_view owner,
						const CPNet& net, const std::set<FeatureName>& scope);

/// Unfolds every unconditional relation over all other features of the net.
CPNet unfold_net(const CPNet& net);

/// Inverse of unfold_net: an ordering repeated under every single-feature
/// condition {G=g}, for every other feature G and every g in D(G), collapses
/// into one unconditional relation. Runs to a fixpoint.
CPNet fold_net(const CPNet& net);

}  // namespace cpnet
