#include "cfm/net_io.hpp"

#include <algorithm>
#include <sstream>

#include "cfm/error.hpp"

namespace cfm {
namespace {

std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + '"';
}

} // namespace

nlohmann::ordered_json net_to_json(const Net& net)
{
    nlohmann::ordered_json j;
    j["places"] = net.place_names();
    auto ts = nlohmann::ordered_json::array();
    for (const Transition& t : net.transitions()) {
        nlohmann::ordered_json tj;
        tj["pre"] = t.pre;
        tj["label"] = t.label.text();
        tj["post"] = t.post ? nlohmann::ordered_json(*t.post) : nlohmann::ordered_json(nullptr);
        ts.push_back(std::move(tj));
    }
    j["transitions"] = std::move(ts);
    auto init = nlohmann::ordered_json::array();
    for (const auto& [p, n] : net.initial().entries())
        init.push_back({{"place", p}, {"count", n}});
    j["initial"] = std::move(init);
    return j;
}

Net net_from_json(const nlohmann::json& j, const std::set<std::string>& high)
{
    try {
        auto names = j.at("places").get<std::vector<std::string>>();
        std::vector<Transition> ts;
        for (const auto& tj : j.at("transitions")) {
            auto label = tj.at("label").get<std::string>();
            Action a = label == "tau" ? Action::tau() : high.count(label) ? Action::high(label) : Action::low(label);
            PlaceOrTheta post;
            if (!tj.at("post").is_null())
                post = tj.at("post").get<PlaceId>();
            ts.push_back({tj.at("pre").get<PlaceId>(), a, post});
        }
        Marking m0;
        for (const auto& e : j.at("initial"))
            m0.add(e.at("place").get<PlaceId>(), e.at("count").get<std::uint32_t>());
        return Net(std::move(names), std::move(ts), std::move(m0));
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed net JSON: ") + e.what());
    }
}

std::string net_to_dot(const Net& net)
{
    std::ostringstream out;
    out << "digraph net {\n  rankdir=LR;\n";
    for (PlaceId p = 0; p < net.place_count(); ++p)
        out << "  p" << p << " [shape=circle, label=" << quoted(std::to_string(net.initial().count(p)))
            << ", xlabel=" << quoted(net.place_name(p)) << "];\n";
    const auto ts = net.transitions();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out << "  t" << i << " [shape=box, label=" << quoted(ts[i].label.text()) << "];\n";
        out << "  p" << ts[i].pre << " -> t" << i << ";\n";
        if (ts[i].post)
            out << "  t" << i << " -> p" << *ts[i].post << ";\n";
    }
    out << "}\n";
    return out.str();
}

nlohmann::ordered_json partition_to_json(const Net& net, const Partition& p)
{
    std::vector<std::vector<std::string>> classes;
    for (const auto& cls : p.classes()) {
        std::vector<std::string> names;
        for (PlaceId s : cls)
            names.push_back(net.place_name(s));
        std::sort(names.begin(), names.end());
        classes.push_back(std::move(names));
    }
    std::sort(classes.begin(), classes.end());
    nlohmann::ordered_json j;
    j["classes"] = classes;
    return j;
}

nlohmann::ordered_json lts_to_json(const Lts& lts)
{
    nlohmann::ordered_json j;
    auto states = nlohmann::ordered_json::array();
    for (const auto& s : lts.states)
        states.push_back(s->text());
    j["states"] = std::move(states);
    auto edges = nlohmann::ordered_json::array();
    for (const LtsEdge& e : lts.edges)
        edges.push_back({{"from", e.from}, {"label", e.label.text()}, {"to", e.to}});
    j["edges"] = std::move(edges);
    return j;
}

std::string lts_to_dot(const Lts& lts)
{
    std::ostringstream out;
    out << "digraph lts {\n";
    for (std::size_t i = 0; i < lts.states.size(); ++i)
        out << "  q" << i << " [shape=" << (i == 0 ? "doublecircle" : "circle") << ", label="
            << quoted(lts.states[i]->text()) << "];\n";
    for (const LtsEdge& e : lts.edges)
        out << "  q" << e.from << " -> q" << e.to << " [label=" << quoted(e.label.text()) << "];\n";
    out << "}\n";
    return out.str();
}

} // namespace cfm
