#pragma once

#include <set>
#include <string>

#include <json.hpp>

#include "cfm/equivalence.hpp"
#include "cfm/lts.hpp"
#include "cfm/net.hpp"

namespace cfm {

/// {places:[name], transitions:[{pre, label, post|null}], initial:[{place, count}]}
/// with places in id order and place references as ids.
nlohmann::ordered_json net_to_json(const Net& net);

/// Inverse of net_to_json. Labels named in `high` are read as high actions.
/// Throws Error on malformed input.
Net net_from_json(const nlohmann::json& j, const std::set<std::string>& high = {});

/// GraphViz rendering: places as circles labelled with their token count
/// (name as external label), transitions as boxes.
std::string net_to_dot(const Net& net);

/// {classes:[[place name]]}, each class sorted by name, classes sorted by
/// their first member. θ is left out.
nlohmann::ordered_json partition_to_json(const Net& net, const Partition& p);

/// {states:[term], edges:[{from, label, to}]}; state 0 is initial.
nlohmann::ordered_json lts_to_json(const Lts& lts);
std::string lts_to_dot(const Lts& lts);

} // namespace cfm
