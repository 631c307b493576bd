#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfm/equivalence.hpp"
#include "cfm/error.hpp"
#include "cfm/net.hpp"
#include "cfm/net_io.hpp"
#include "cfm/parser.hpp"
#include "cfm/random_spec.hpp"
#include "cfm/security.hpp"
#include "cfm/syntax.hpp"
#include "cfm/typing.hpp"

namespace cfm::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

struct Config {
    std::string input;
    bool random = false;
    std::uint64_t seed = 1;
    std::string format = "text";
    std::size_t max_states = kDefaultStateCap;
    std::string method = "all";
    bool sbndc = false;
    std::string left;
    std::string right;
    bool rooted = false;
};

class UsageError : public Error {
public:
    using Error::Error;
};

Spec load(const Config& c, std::ostream& out)
{
    if (c.random) {
        Rng rng(c.seed);
        Spec spec = random_spec(rng);
        if (c.format == "text")
            out << "# random specification, seed " << c.seed << "\n" << to_string(spec) << "\n";
        return spec;
    }
    if (c.input.empty())
        throw UsageError("an input file is required (or --random)");
    std::ifstream in(c.input);
    if (!in)
        throw Error("cannot read " + c.input);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_spec(buf.str());
    } catch (const ParseError& e) {
        throw Error(c.input + ":" + e.what());
    }
}

void require_format(const Config& c, std::initializer_list<const char*> allowed)
{
    for (const char* f : allowed)
        if (c.format == f)
            return;
    throw UsageError("format " + c.format + " is not available for this command");
}

int cmd_net(const Config& c, std::ostream& out)
{
    require_format(c, {"text", "json", "dot"});
    Spec spec = load(c, out);
    Net net = build_net(spec);
    if (c.format == "json") {
        out << net_to_json(net).dump(2) << "\n";
    } else if (c.format == "dot") {
        out << net_to_dot(net);
    } else {
        out << "places (" << net.place_count() << "):\n";
        for (PlaceId p = 0; p < net.place_count(); ++p)
            out << "  " << net.place_name(p) << "\n";
        out << "transitions (" << net.transitions().size() << "):\n";
        for (const Transition& t : net.transitions())
            out << "  " << net.place_name(t.pre) << " --" << t.label.text() << "--> "
                << net.place_or_theta_text(t.post) << "\n";
        out << "initial: " << net.marking_text(net.initial()) << "\n";
    }
    return 0;
}

int cmd_lts(const Config& c, std::ostream& out)
{
    require_format(c, {"text", "json", "dot"});
    Spec spec = load(c, out);
    Lts lts = build_lts(spec.main, spec, c.max_states);
    if (c.format == "json") {
        out << lts_to_json(lts).dump(2) << "\n";
    } else if (c.format == "dot") {
        out << lts_to_dot(lts);
    } else {
        out << "states (" << lts.states.size() << "):\n";
        for (std::size_t i = 0; i < lts.states.size(); ++i)
            out << "  " << i << ": " << lts.states[i]->text() << "\n";
        out << "transitions (" << lts.edges.size() << "):\n";
        for (const LtsEdge& e : lts.edges)
            out << "  " << e.from << " --" << e.label.text() << "--> " << e.to << "\n";
    }
    return 0;
}

int cmd_reach(const Config& c, std::ostream& out)
{
    require_format(c, {"text", "json"});
    Spec spec = load(c, out);
    Net net = build_net(spec);
    ReachabilityGraph g = reachability_graph(net, net.initial(), c.max_states);
    if (c.format == "json") {
        ordered_json j;
        auto ms = ordered_json::array();
        for (const Marking& m : g.markings) {
            auto entries = ordered_json::array();
            for (const auto& [p, n] : m.entries())
                entries.push_back({{"place", p}, {"count", n}});
            ms.push_back(std::move(entries));
        }
        j["places"] = net.place_names();
        j["markings"] = std::move(ms);
        auto edges = ordered_json::array();
        for (const MarkingEdge& e : g.edges)
            edges.push_back({{"from", e.from}, {"transition", e.transition}, {"to", e.to}});
        j["edges"] = std::move(edges);
        out << j.dump(2) << "\n";
    } else {
        out << "reachable markings (" << g.markings.size() << "):\n";
        for (std::size_t i = 0; i < g.markings.size(); ++i)
            out << "  " << i << ": " << net.marking_text(g.markings[i]) << "\n";
    }
    return 0;
}

// Why two markings of the same net are not (rooted) team equivalent.
std::string explain_markings(const Net& net, const Partition& p, const Marking& a, const Marking& b, bool rooted)
{
    if (a.size() != b.size())
        return "the markings have different sizes (" + std::to_string(a.size()) + " and " +
               std::to_string(b.size()) + ")";
    auto left = a.elements();
    auto right = b.elements();
    if (left.size() == 1) {
        if (!p.related(left[0], right[0]))
            return explain_difference(net, p, left[0], right[0]);
        if (rooted)
            return net.place_name(left[0]) + " and " + net.place_name(right[0]) +
                   " are branching bisimilar, but a first move of one is not matched by the same move of the other";
    }
    for (PlaceId s : left) {
        auto matches = [&](PlaceId t) { return p.related(s, t); };
        if (std::none_of(right.begin(), right.end(), matches))
            return "no component of the right marking is equivalent to " + net.place_name(s);
    }
    return "the class multisets of the two markings differ";
}

int cmd_equiv(const Config& c, std::ostream& out)
{
    require_format(c, {"text", "json"});
    Spec spec = load(c, out);
    if (c.left.empty() != c.right.empty())
        throw UsageError("equiv needs both --left and --right, or neither");
    if (c.left.empty()) {
        Net net = build_net(spec);
        Partition p = branching_bisim(net);
        if (c.format == "json") {
            out << partition_to_json(net, p).dump(2) << "\n";
        } else {
            out << "branching bisimulation classes (" << p.classes().size() << "):\n";
            for (const auto& cls : p.classes()) {
                out << " ";
                for (PlaceId s : cls)
                    out << " " << net.place_name(s);
                out << "\n";
            }
        }
        return 0;
    }
    TermPtr l = parse_term(c.left, spec);
    TermPtr r = parse_term(c.right, spec);
    Net net = build_net(par(l, r), spec);
    Partition p = branching_bisim(net);
    Marking ml = net.marking_of(dec(l));
    Marking mr = net.marking_of(dec(r));
    bool related = c.rooted ? markings_rooted_equiv(net, p, ml, mr) : markings_equiv(p, ml, mr);
    std::string why = related ? "" : explain_markings(net, p, ml, mr, c.rooted);
    if (c.format == "json") {
        ordered_json j;
        j["left"] = l->text();
        j["right"] = r->text();
        j["rooted"] = c.rooted;
        j["equivalent"] = related;
        j["explanation"] = related ? ordered_json(nullptr) : ordered_json(why);
        out << j.dump(2) << "\n";
    } else {
        out << l->text() << (related ? " is " : " is not ") << (c.rooted ? "rooted " : "")
            << "branching team equivalent to " << r->text() << "\n";
        if (!related)
            out << "  " << why << "\n";
    }
    return related ? 0 : 1;
}

ordered_json verdict_json(const Verdict& v)
{
    ordered_json j;
    j["method"] = to_string(v.method);
    j["secure"] = v.secure;
    if (v.method == Method::Compositional)
        j["components"] = v.components;
    if (v.method == Method::Definitional || v.method == Method::Sbndc)
        j["states_explored"] = v.states_explored;
    auto ws = ordered_json::array();
    for (const Witness& w : v.witnesses) {
        ordered_json wj;
        if (!w.component.empty())
            wj["component"] = w.component;
        wj["high_transition"] = {{"pre", w.pre}, {"label", w.label}, {"post", w.post}};
        wj["context"] = w.context ? ordered_json(*w.context) : ordered_json(nullptr);
        wj["reason"] = w.reason;
        ws.push_back(std::move(wj));
    }
    j["witnesses"] = std::move(ws);
    return j;
}

void verdict_text(const Verdict& v, std::ostream& out)
{
    out << to_string(v.method) << ": " << (v.secure ? "secure" : "insecure");
    if (v.method == Method::Definitional || v.method == Method::Sbndc)
        out << " (" << v.states_explored << " states explored)";
    out << "\n";
    if (v.method == Method::Compositional) {
        out << "  components:";
        for (const auto& comp : v.components)
            out << " " << comp;
        out << "\n";
    }
    for (const Witness& w : v.witnesses) {
        out << "  ";
        if (!w.component.empty())
            out << "[" << w.component << "] ";
        out << w.pre << " --" << w.label << "--> " << w.post;
        if (w.context)
            out << " from " << *w.context;
        out << "\n    " << w.reason << "\n";
    }
}

int cmd_dni(const Config& c, std::ostream& out)
{
    require_format(c, {"text", "json"});
    std::vector<Method> methods;
    if (c.method == "def")
        methods = {Method::Definitional};
    else if (c.method == "struct")
        methods = {Method::Structural};
    else if (c.method == "comp")
        methods = {Method::Compositional};
    else if (c.method == "rooted")
        methods = {Method::Rooted};
    else if (c.method == "all")
        methods = {Method::Definitional, Method::Structural, Method::Compositional};
    else
        throw UsageError("unknown method " + c.method);
    if (c.sbndc)
        methods.push_back(Method::Sbndc);

    Spec spec = load(c, out);
    std::vector<Verdict> verdicts;
    for (Method m : methods)
        verdicts.push_back(check(spec, m, c.max_states));
    bool secure = std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.secure; });
    if (c.format == "json") {
        ordered_json j;
        j["secure"] = secure;
        auto vs = ordered_json::array();
        for (const Verdict& v : verdicts)
            vs.push_back(verdict_json(v));
        j["verdicts"] = std::move(vs);
        out << j.dump(2) << "\n";
    } else {
        for (const Verdict& v : verdicts)
            verdict_text(v, out);
    }
    return secure ? 0 : 1;
}

ordered_json derivation_json(const Derivation& d)
{
    ordered_json j;
    j["rule"] = d.rule;
    j["term"] = d.term->text();
    j["scanned"] = d.scanned;
    auto ps = ordered_json::array();
    for (const auto& p : d.premises)
        ps.push_back(derivation_json(*p));
    j["premises"] = std::move(ps);
    return j;
}

int cmd_type(const Config& c, std::ostream& out)
{
    require_format(c, {"text", "json"});
    Spec spec = load(c, out);
    TypingJudgment j = type_check(spec);
    bool reordered = j.typed && (!same_term(j.reordered, j.term) || !j.reordered_bodies.empty());
    if (c.format == "json") {
        ordered_json o;
        o["term"] = j.term->text();
        o["typed"] = j.typed;
        if (j.typed) {
            o["reordered"] = j.reordered->text();
            ordered_json bodies = ordered_json::object();
            for (const auto& [name, body] : j.reordered_bodies)
                bodies[name] = body->text();
            o["reordered_bodies"] = std::move(bodies);
            o["derivation"] = derivation_json(*j.derivation);
        } else {
            o["reason"] = j.reason;
            o["failing_subterm"] = j.failing_subterm->text();
        }
        out << o.dump(2) << "\n";
    } else if (j.typed) {
        out << "typed: (" << j.term->text() << ", {}):dni\n";
        if (reordered) {
            out << "after reordering summands:\n";
            if (!same_term(j.reordered, j.term))
                out << "  main := " << j.reordered->text() << "\n";
            for (const auto& [name, body] : j.reordered_bodies)
                out << "  " << name << " := " << body->text() << "\n";
        }
        out << "derivation:\n" << render_derivation(*j.derivation);
    } else {
        out << "untyped: " << j.term->text() << "\n  failing subterm: " << j.failing_subterm->text() << "\n  "
            << j.reason << "\n";
    }
    return j.typed ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Config c;
    CLI::App app{"Decide distributed non-interference of CFM specifications"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("input", c.input, "specification file");
        sub->add_flag("--random", c.random, "analyse a random specification drawn from --seed");
        sub->add_option("--seed", c.seed, "seed for --random");
        sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json", "dot"}));
        sub->add_option("--max-states", c.max_states, "exploration cap")->check(CLI::PositiveNumber);
    };
    auto* net = app.add_subcommand("net", "print the net of main");
    auto* lts = app.add_subcommand("lts", "print the interleaving transition system of main");
    auto* reach = app.add_subcommand("reach", "list the reachable markings");
    auto* equiv = app.add_subcommand("equiv", "compare two processes, or print the bisimulation classes");
    auto* dni = app.add_subcommand("dni", "check distributed non-interference");
    auto* type = app.add_subcommand("type", "run the typing system");
    for (auto* sub : {net, lts, reach, equiv, dni, type})
        common(sub);
    equiv->add_option("--left", c.left, "first process");
    equiv->add_option("--right", c.right, "second process");
    equiv->add_flag("--rooted", c.rooted, "use the rooted equivalence");
    dni->add_option("--method", c.method, "def, struct, comp, rooted or all")
        ->check(CLI::IsMember({"def", "struct", "comp", "rooted", "all"}));
    dni->add_flag("--sbndc", c.sbndc, "also run the interleaving SBNDC check");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (net->parsed())
            return cmd_net(c, out);
        if (lts->parsed())
            return cmd_lts(c, out);
        if (reach->parsed())
            return cmd_reach(c, out);
        if (equiv->parsed())
            return cmd_equiv(c, out);
        if (dni->parsed())
            return cmd_dni(c, out);
        return cmd_type(c, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
    } catch (const StateLimitExceeded& e) {
        err << "resource error: " << e.what() << "\n";
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
    }
    return 2;
}

} // namespace cfm::cli
