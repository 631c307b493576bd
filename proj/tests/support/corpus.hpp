#pragma once

#include <string>
#include <vector>

#include "cfm/net.hpp"

namespace cfm::testing {

struct CorpusEntry {
    std::string name;
    std::string text;
};

/// Hand-written specifications covering the worked examples.
const std::vector<CorpusEntry>& corpus();
const std::string& corpus_text(const std::string& name);

/// Two small nets used to exercise branching bisimilarity directly:
/// the choice-timing and termination examples (places s1..s8) and the
/// stuttering example (places s1..s7).
Net choice_timing_net();
Net stuttering_net();

} // namespace cfm::testing
