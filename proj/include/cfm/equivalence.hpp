#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cfm/lts.hpp"
#include "cfm/net.hpp"

namespace cfm {

/// Partition of the places of a net plus the distinguished θ element.
///
/// Class ids are canonical: place classes are numbered in order of their
/// smallest place id, and θ always gets the last id in a class of its own.
/// Two partitions of the same net are equal iff they induce the same
/// relation.
class Partition {
public:
    Partition() = default;
    /// `block` gives an arbitrary block number per place; θ is kept separate.
    explicit Partition(const std::vector<std::size_t>& block);

    std::size_t place_count() const { return class_of_.size(); }
    std::size_t class_of(PlaceId p) const { return class_of_.at(p); }
    std::size_t class_of(PlaceOrTheta p) const { return p ? class_of_.at(*p) : theta_class_; }
    std::size_t theta_class() const { return theta_class_; }
    /// Number of classes including θ.
    std::size_t class_count() const { return theta_class_ + 1; }
    bool related(PlaceOrTheta a, PlaceOrTheta b) const { return class_of(a) == class_of(b); }
    /// Place classes (θ excluded), each sorted, in class-id order.
    std::vector<std::vector<PlaceId>> classes() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<std::size_t> class_of_;
    std::size_t theta_class_ = 0;
};

/// Branching bisimilarity ≈ on the places of `net` (signature refinement).
Partition branching_bisim(const Net& net);

/// Rooted branching bisimilarity: every first move of one place is matched
/// by an equally labelled first move of the other, with θ = θ or ≈-related
/// targets. `p` must be branching_bisim(net).
bool rooted_pairs(const Net& net, const Partition& p, PlaceId q1, PlaceId q2);

/// Additive closure of the partition's relation: equal sizes and equal
/// multisets of class ids.
bool markings_equiv(const Partition& p, const Marking& m1, const Marking& m2);

/// Additive closure of the rooted relation.
bool markings_rooted_equiv(const Net& net, const Partition& p, const Marking& m1, const Marking& m2);

/// Branching and rooted branching team equivalence of two processes, taken
/// on the union of their nets.
bool team_equivalent(const TermPtr& p, const TermPtr& q, const Spec& spec);
bool rooted_team_equivalent(const TermPtr& p, const TermPtr& q, const Spec& spec);

/// One step telling apart two places (or θ) in different classes, such as
/// `C can do a to a place outside every class b.0 reaches`. Best effort:
/// returns a generic sentence when no single-step reason is found.
std::string explain_difference(const Net& net, const Partition& p, PlaceOrTheta a, PlaceOrTheta b);

/// Edge-labelled graph for strong bisimulation checks.
struct LabelledGraph {
    struct Edge {
        std::size_t from;
        std::string label;
        std::size_t to;
    };
    std::size_t states = 0;
    std::vector<Edge> edges;
};

/// Coarsest strong bisimulation; result[i] is the class of state i.
/// Class ids are numbered in order of first occurrence.
std::vector<std::size_t> strong_bisimulation(const LabelledGraph& g);

/// Strong bisimulation classes of LTS states.
std::vector<std::size_t> strong_bisim_lts(const Lts& lts);

LabelledGraph to_graph(const Lts& lts);

} // namespace cfm
