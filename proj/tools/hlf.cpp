// hlf: command-line front end.
//
// Exit codes: 0 pass/true, 1 input error, 2 property failure, 3 false
// verdict or non-membership, 4 net values unsuitable for the requested mode.

#include <hlf/hlf.hpp>
#include <hlf/props.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace hlf;

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_property = 2;
constexpr int exit_false = 3;
constexpr int exit_mode = 4;

std::string power(const Integer& p, const QExp& v) {
    if (v.is_zero()) {
        return "0 (exponent -inf)";
    }
    return p.str() + "^" + v.to_string() + " (exponent " + v.to_string() + ")";
}

NetKind parse_kind(const std::string& s) {
    if (s == "lattice") {
        return NetKind::open_lattice;
    }
    if (s == "bounded") {
        return NetKind::bounded;
    }
    return NetKind::compactoid;
}

std::string show_tail(const std::vector<Integer>& tail) { return MultiIndex(tail).to_string(); }

std::string show_direction(const std::vector<int>& dir) {
    std::string out = "(";
    for (std::size_t i = 0; i < dir.size(); ++i) {
        out += (i == 0 ? "" : ",") + std::to_string(dir[i]);
    }
    return out + ")";
}

Region window_box(std::size_t d, long long w) { return Region::window(d, Integer(w)); }

// Reconstruction queries every point of its window, so refuse boxes that
// cannot be enumerated in reasonable time.
constexpr long long max_window_points = 10'000'000;

void require_enumerable(const Region& box) {
    Integer n = 1;
    for (const auto& i : box.box) {
        n *= *i.hi - *i.lo + 1;
        if (n > max_window_points) {
            throw error(errc::invalid_argument, "window has more than " + std::to_string(max_window_points) +
                                                    " points; pass a smaller --window");
        }
    }
}

struct ClassifyArgs {
    std::string net;
    std::size_t n = 2;
    std::size_t r = 0;
    std::string kind;
    long long window = 25;
};

int cmd_classify(const ClassifyArgs& a) {
    const NetSpec net = io::read_net(a.net);
    const FieldShape shape{a.n, a.r};
    const NetKind kind = parse_kind(a.kind);
    const Verdict v = classify(net, shape, kind);
    std::cout << "kind: " << to_string(kind) << "\n";
    std::cout << "shape: n=" << shape.n << " r=" << shape.r << "\n";
    std::cout << "verdict: " << (v.holds ? "true" : "false") << "\n";
    if (v.witness) {
        const Witness& w = *v.witness;
        std::cout << "witness.clause: " << to_string(w.clause) << "\n";
        std::cout << "witness.l: " << w.l << "\n";
        std::cout << "witness.piece: " << w.piece << "\n";
        std::cout << "witness.tail: " << show_tail(w.tail) << "\n";
        std::cout << "witness.direction: " << show_direction(w.direction) << "\n";
        std::cout << "witness.point: " << w.point.to_string() << "\n";
        std::cout << "witness.reason: " << w.reason << "\n";
    }
    const Corroboration c = window_corroborate(net, shape, kind, Integer(a.window));
    std::cout << "corroboration.window: " << a.window << "\n";
    if (c.counterexample) {
        std::cout << "corroboration.status: counterexample\n";
        std::cout << "corroboration.clause: " << c.clause << "\n";
        std::cout << "corroboration.point: " << c.point->to_string() << "\n";
        std::cout << "corroboration.value: " << c.value->to_string() << "\n";
    } else {
        std::cout << "corroboration.status: " << (c.insufficient ? "corroborated-insufficient" : "corroborated")
                  << "\n";
    }
    for (const auto& u : c.undecided) {
        std::cout << "corroboration.undecided: " << u << "\n";
    }
    return v.holds ? exit_ok : exit_false;
}

int cmd_seminorm(const std::string& net_file, const std::string& element_file, const std::string& mode) {
    const NetSpec net = io::read_net(net_file);
    const LaurentElement x = io::read_element(element_file);
    try {
        if (mode == "archimedean") {
            const RhoNet rho = RhoNet::from_net(net);
            if (rho.dim() != x.dim()) {
                throw error(errc::dimension_mismatch, "element and net dimensions differ");
            }
            const Rational v = archimedean_seminorm(x, rho);
            std::cout << "mode: archimedean\n";
            std::cout << "admissible: " << (rho.admissible() ? "true" : "false") << "\n";
            std::cout << "seminorm: " << v.str() << "\n";
            return exit_ok;
        }
        const QExp v = mode == "gauge" ? gauge_eval(net, x) : seminorm_eval(net, x);
        std::cout << "mode: " << mode << "\n";
        std::cout << "seminorm: " << power(x.prime(), v) << "\n";
        return exit_ok;
    } catch (const error& e) {
        if (e.code() == errc::invalid_net_values || e.code() == errc::nonpositive_rho) {
            std::cerr << "error: " << e.what() << "\n";
            return exit_mode;
        }
        throw;
    }
}

int cmd_member(const std::string& net_file, const std::string& element_file) {
    const NetSpec net = io::read_net(net_file);
    const LaurentElement x = io::read_element(element_file);
    require_valid(net);
    const bool member = element_in_net(x, net);
    std::cout << "member: " << (member ? "true" : "false") << "\n";
    if (!member) {
        for (const auto& [alpha, c] : x.terms()) {
            const ExtInt v = val_p(c, x.prime());
            const ExtInt bound = net_eval(net, alpha);
            if (v < bound) {
                std::cout << "violation.index: " << alpha.to_string() << "\n";
                std::cout << "violation.valuation: " << v.to_string() << "\n";
                std::cout << "violation.net: " << bound.to_string() << "\n";
                break;
            }
        }
    }
    return member ? exit_ok : exit_false;
}

struct DualArgs {
    std::string x;
    std::string y;
    std::string net;
    std::string element;
    std::string out;
    std::size_t n = 2;
    std::size_t r = 0;
    std::optional<long long> window;
};

int cmd_pair(const DualArgs& a) {
    const LaurentElement x = io::read_element(a.x);
    const LaurentElement y = io::read_element(a.y);
    std::cout << "pair: " << pair(x, y).str() << "\n";
    return exit_ok;
}

int cmd_polar(const DualArgs& a) {
    const NetSpec net = io::read_net(a.net);
    require_valid(net);
    const NetSpec polar = polar_transform(net);
    if (a.out.empty()) {
        std::cout << io::to_json(polar);
    } else {
        io::write_file(a.out, io::to_json(polar));
        std::cout << "written: " << a.out << "\n";
    }
    if (a.element.empty()) {
        return exit_ok;
    }
    const PolarMembership m = polar_membership(io::read_element(a.element), net);
    std::cout << "polar_member: " << (m.member ? "true" : "false") << "\n";
    if (m.refutation) {
        const auto& c = *m.refutation;
        std::cout << "certificate.index: " << c.index.to_string() << "\n";
        std::cout << "certificate.exponent: " << c.exponent.str() << "\n";
        std::cout << "certificate.pairing: " << c.pairing.str() << "\n";
    }
    return m.member ? exit_ok : exit_false;
}

int cmd_cseminorm(const DualArgs& a) {
    const LaurentElement x = io::read_element(a.element);
    const NetSpec net = io::read_net(a.net);
    const CSeminorm v = c_seminorm(x, net, FieldShape{a.n, a.r});
    std::cout << "cseminorm: " << power(x.prime(), v.value) << "\n";
    std::cout << "compactoid: " << (v.compactoid ? "true" : "false") << "\n";
    return exit_ok;
}

int cmd_reconstruct(const DualArgs& a) {
    const LaurentElement x = io::read_element(a.element);
    Region window;
    if (a.window) {
        window = window_box(x.dim(), *a.window);
    } else {
        window = x.support_box().value_or(window_box(x.dim(), 0));
    }
    require_enumerable(window);
    const LaurentElement back = reconstruct(monomial_oracle(gamma(x)), window, x.dim(), x.prime());
    if (a.out.empty()) {
        std::cout << io::to_json(back);
    } else {
        io::write_file(a.out, io::to_json(back));
        std::cout << "written: " << a.out << "\n";
    }
    return exit_ok;
}

int cmd_convolve(const std::string& f1, const std::string& f2, long long w) {
    const NetSpec n1 = io::read_net(f1);
    const NetSpec n2 = io::read_net(f2);
    const Region window = window_box(n1.dim, w);
    const WindowTable t = min_plus_convolve(n1, n2, window);
    std::cout << "window: " << w << "\n";
    for_each_point(window, [&](const MultiIndex& a) { std::cout << a.to_string() << ": " << t.at(a).to_string() << "\n"; });
    return exit_ok;
}

int cmd_props(const std::string& config_path, const std::string& suite, const std::optional<std::size_t>& index) {
    props::SuiteConfig cfg;
    try {
        cfg = props::read_config(config_path);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    if (!suite.empty() && props::find_suite(suite) == nullptr) {
        std::cerr << "error: unknown suite " << suite << "\n";
        return exit_input;
    }
    if (index) {
        if (suite.empty() || *index >= props::case_count(cfg, suite)) {
            std::cerr << "error: --case needs --suite and an index below the suite's case count\n";
            return exit_input;
        }
        const auto r = props::run_case(cfg, suite, *index);
        std::cout << props::format_case(suite, *index, r);
        return r.pass ? exit_ok : exit_property;
    }
    std::vector<props::SuiteReport> reports;
    for (const auto& s : props::suites()) {
        if (suite.empty() || s.name == suite) {
            reports.push_back(props::run_suite(cfg, s.name));
        }
    }
    std::cout << props::format_report(cfg, config_path, reports);
    const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.ok(); });
    return ok ? exit_ok : exit_property;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations in higher local fields over Q_p"};
    app.require_subcommand(1);
    int status = exit_ok;

    ClassifyArgs ca;
    auto* classify_cmd = app.add_subcommand("classify", "Decide whether a net cuts out an open lattice, a bounded or "
                                                        "a compactoid submodule");
    classify_cmd->add_option("--net", ca.net, "net file")->required();
    classify_cmd->add_option("--n", ca.n, "n, the field's dimension")->required()->check(CLI::Range(2, 64));
    classify_cmd->add_option("--r", ca.r, "r, the number of {{t}} parameters")->required();
    classify_cmd->add_option("--kind", ca.kind, "lattice, bounded or compactoid")
        ->required()
        ->check(CLI::IsMember({"lattice", "bounded", "compactoid"}));
    classify_cmd->add_option("--window", ca.window, "corroboration window radius")->check(CLI::Range(1, 1000));
    classify_cmd->callback([&] { status = cmd_classify(ca); });

    std::string net_file;
    std::string element_file;
    std::string mode = "padic";
    auto* seminorm_cmd = app.add_subcommand("seminorm", "Evaluate an admissible seminorm");
    seminorm_cmd->add_option("--net", net_file, "net file")->required();
    seminorm_cmd->add_option("--element", element_file, "element file")->required();
    seminorm_cmd->add_option("--mode", mode, "padic, gauge or archimedean")
        ->check(CLI::IsMember({"padic", "gauge", "archimedean"}));
    seminorm_cmd->callback([&] { status = cmd_seminorm(net_file, element_file, mode); });

    auto* member_cmd = app.add_subcommand("member", "Test membership of an element in a net's submodule");
    member_cmd->add_option("--net", net_file, "net file")->required();
    member_cmd->add_option("--element", element_file, "element file")->required();
    member_cmd->callback([&] { status = cmd_member(net_file, element_file); });

    DualArgs da;
    auto* dual_cmd = app.add_subcommand("dual", "Pairing, pseudo-polars and the self-duality map");
    dual_cmd->require_subcommand(1);
    auto* pair_cmd = dual_cmd->add_subcommand("pair", "The pairing of two elements");
    pair_cmd->add_option("--x", da.x, "element file")->required();
    pair_cmd->add_option("--y", da.y, "element file")->required();
    pair_cmd->callback([&] { status = cmd_pair(da); });
    auto* polar_cmd = dual_cmd->add_subcommand("polar", "The net of the pseudo-polar");
    polar_cmd->add_option("--net", da.net, "net file")->required();
    polar_cmd->add_option("--out", da.out, "output net file (default: stdout)");
    polar_cmd->add_option("--element", da.element, "also test this element for membership in the polar");
    polar_cmd->callback([&] { status = cmd_polar(da); });
    auto* cs_cmd = dual_cmd->add_subcommand("cseminorm", "Seminorm of uniform convergence on a compactoid");
    cs_cmd->add_option("--element", da.element, "element file")->required();
    cs_cmd->add_option("--net", da.net, "net of the compactoid")->required();
    cs_cmd->add_option("--n", da.n, "n")->required()->check(CLI::Range(2, 64));
    cs_cmd->add_option("--r", da.r, "r")->required();
    cs_cmd->callback([&] { status = cmd_cseminorm(da); });
    auto* rec_cmd = dual_cmd->add_subcommand("reconstruct", "Recover an element from its functional");
    rec_cmd->add_option("--element", da.element, "representer element file")->required();
    rec_cmd->add_option("--window", da.window, "window radius (default: support box)")->check(CLI::Range(0, 1000));
    rec_cmd->add_option("--out", da.out, "output element file (default: stdout)");
    rec_cmd->callback([&] { status = cmd_reconstruct(da); });

    std::string net1;
    std::string net2;
    long long conv_window = 0;
    auto* conv_cmd = app.add_subcommand("convolve", "Min-plus convolution of two nets on a window");
    conv_cmd->add_option("--net1", net1, "net file")->required();
    conv_cmd->add_option("--net2", net2, "net file")->required();
    conv_cmd->add_option("--window", conv_window, "window radius")->required()->check(CLI::Range(0, 1000));
    conv_cmd->callback([&] { status = cmd_convolve(net1, net2, conv_window); });

    std::string config;
    std::string suite;
    std::optional<std::size_t> case_index;
    auto* props_cmd = app.add_subcommand("props", "Run the property suites");
    props_cmd->add_option("--config", config, "suite configuration file")->required();
    props_cmd->add_option("--suite", suite, "run only this suite");
    props_cmd->add_option("--case", case_index, "run only this case of --suite");
    props_cmd->callback([&] { status = cmd_props(config, suite, case_index); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return status;
}
