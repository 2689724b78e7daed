// efo -- command-line front end
//
// Exit status: 0 true / success, 1 false / failed check, 2 usage or input error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <efo/digraph.hpp>
#include <efo/enumerate2.hpp>
#include <efo/service.hpp>
#include <efo/three_equiv.hpp>

using namespace efo;

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    unsigned n = 2;
    std::size_t m = 3;
    std::optional<std::size_t> budget;
    std::string dot;
    bool json = false;
    std::string file;
    std::string example;
    std::string region;
    std::size_t k = 5;
    std::string out;
    int port = 8080;
    std::string host = "127.0.0.1";
    std::vector<std::string> inputs;
    std::string name;
};

std::string example_text(const std::string& name) {
    if (name == "len70") return fixtures::len70();
    if (name == "len74") return fixtures::len74();
    if (name == "palindrome15") return fixtures::kPalindrome15;
    throw UsageError("unknown example '" + name + "' (expected len70, len74 or palindrome15)");
}

/// Orders named on the command line: positional text, --example, then --file.
std::vector<ColouredOrder> orders(const Options& o, const Palette& palette) {
    std::vector<ColouredOrder> out;
    for (const auto& t : o.inputs) out.push_back(parse(t, palette));
    if (!o.example.empty()) out.push_back(parse(example_text(o.example), palette));
    if (!o.file.empty()) {
        std::ifstream in(o.file);
        if (!in) throw UsageError("cannot read " + o.file);
        for (auto& x : read_orders(in, palette)) out.push_back(std::move(x));
    }
    return out;
}

ColouredOrder one_order(const Options& o, const Palette& palette) {
    auto all = orders(o, palette);
    if (all.size() != 1) throw UsageError("expected exactly one input order, got " + std::to_string(all.size()));
    return all.front();
}

/// Writes to -o FILE, or stdout.
template <class F>
void emit(const std::string& path, F&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    write(f);
}

int cmd_equiv(const Options& o, const Palette& palette) {
    auto all = orders(o, palette);
    if (all.size() != 2) throw UsageError("equiv needs two orders, got " + std::to_string(all.size()));
    bool same = equiv(all[0], all[1], o.n);
    std::cout << (same ? "true" : "false") << "\n";
    return same ? kTrue : kFalse;
}

int cmd_canon(const Options& o, const Palette& palette) {
    for (const auto& a : orders(o, palette)) std::cout << print(canon2(a), palette) << "\n";
    return kTrue;
}

int cmd_cut(const Options& o, const Palette& palette) {
    for (const auto& a : orders(o, palette)) std::cout << print(cut(a, o.n), palette) << "\n";
    return kTrue;
}

int cmd_chars(const Options& o, const Palette& palette) {
    if (o.n == 0) throw UsageError("chars needs -n >= 1");
    auto a = one_order(o, palette);
    Typer typer(a);
    auto report = verify_distinct_characters(a, o.n);
    if (o.json) {
        nlohmann::ordered_json j;
        j["order"] = print(a, palette);
        j["n"] = o.n;
        j["distinct"] = report.distinct;
        auto arr = nlohmann::ordered_json::array();
        for (std::size_t p = 0; p < a.size(); ++p) {
            auto c = typer.character(p, o.n);
            arr.push_back({{"position", p + 1},
                           {"colour", palette.glyph(c.colour)},
                           {"left", type_name(c.left, palette)},
                           {"right", type_name(c.right, palette)}});
        }
        j["characters"] = std::move(arr);
        auto reps = nlohmann::ordered_json::array();
        for (auto [x, y] : report.repeats) reps.push_back({x, y});
        j["repeats"] = std::move(reps);
        std::cout << j.dump(2) << "\n";
        return kTrue;
    }
    for (std::size_t p = 0; p < a.size(); ++p) {
        auto c = typer.character(p, o.n);
        std::cout << p + 1 << "\t" << palette.glyph(c.colour) << "\t" << type_name(c.left, palette) << "\t"
                  << type_name(c.right, palette) << "\n";
    }
    std::cout << "# " << report.distinct << " distinct " << o.n << "-characters\n";
    return kTrue;
}

int cmd_enumerate(const Options& o) {
    auto budget = o.budget.value_or(optimal_length_bound2(o.m));
    auto cat = enumerate2(o.m, budget);
    auto palette = Palette::standard(o.m);
    emit(o.out, [&](std::ostream& os) {
        if (o.json) os << catalogue_json(cat, palette).dump(2) << "\n";
        else write_catalogue_csv(os, cat, palette);
    });
    return kTrue;
}

int cmd_debruijn(const Options& o) {
    if (o.m < 1 || o.k < 1) throw UsageError("debruijn needs -m >= 1 and -k >= 1");
    auto palette = Palette::standard(o.m);
    std::cout << glyphs(debruijn(o.m, o.k), palette) << "\n";
    return kTrue;
}

/// --region lo:hi, 1-based inclusive, into a half-open 0-based range.
std::pair<std::size_t, std::size_t> region_of(const std::string& text, std::size_t size) {
    if (text.empty()) return {0, size};
    auto colon = text.find(':');
    std::size_t lo = 0, hi = 0;
    try {
        if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
        std::size_t used = 0;
        lo = std::stoul(text.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("trailing text");
        hi = std::stoul(text.substr(colon + 1), &used);
        if (used != text.size() - colon - 1) throw std::invalid_argument("trailing text");
    } catch (const std::logic_error&) {
        throw UsageError("bad --region '" + text + "' (expected lo:hi)");
    }
    if (lo < 1 || hi < lo || hi > size)
        throw UsageError("--region " + text + " outside 1.." + std::to_string(size));
    return {lo - 1, hi};
}

int cmd_digraph(const Options& o, const Palette& palette) {
    if (o.k < 2) throw UsageError("digraph needs -k >= 2");
    auto a = one_order(o, palette);
    auto [lo, hi] = region_of(o.region, a.size());
    if (hi - lo < o.k) throw UsageError("region shorter than the window width");
    auto d = window_digraph(IntervalView(a, lo, hi), o.k);
    emit(o.dot, [&](std::ostream& os) { d.write_dot(os, palette); });
    std::cerr << d.vertices().size() << " vertices, " << d.edges().size() << " edges, " << d.total_multiplicity()
              << " steps\n";
    return kTrue;
}

struct Checks {
    bool all = true;
    void line(const std::string& label, bool ok, const std::string& detail = "") {
        all = all && ok;
        std::cout << label << ": " << (ok ? "PASS" : "FAIL");
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
    }
    int status() const { return all ? kTrue : kFalse; }
};

int verify_len70(const Options&) {
    const auto rb = Palette::standard(2);
    auto a = parse(fixtures::len70(), rb);
    Checks c;
    auto report = verify_distinct_characters(a, 2);
    c.line(std::to_string(report.distinct) + " distinct 2-characters", report.all_distinct && report.distinct == 70);
    auto split = lmr_split3(a);
    c.line("split L/M/R = 19/32/19", split.convex && split.left == 19 && split.middle == 32 && split.right == 19,
           std::to_string(split.left) + "/" + std::to_string(split.middle) + "/" + std::to_string(split.right));
    c.line("a18..a21 = a50..a53", a.slice(17, 21) == a.slice(49, 53), glyphs(a.slice(17, 21), rb));
    c.line("middle has all 32 cyclic 5-windows", all_cyclic_windows_distinct(a.slice(19, 51), 5));
    return c.status();
}

int verify_palindrome15(const Options&) {
    const auto rb = Palette::standard(2);
    auto a = parse(fixtures::kPalindrome15, rb);
    Checks c;
    c.line("palindrome", reverse(a) == a);
    auto report = verify_distinct_characters(a, 2);
    bool shape = report.distinct == 14 && report.repeats.size() == 1 &&
                 report.repeats.front() == std::pair<std::size_t, std::size_t>{7, 9};
    c.line("14 distinct 2-characters, a7 and a9 share one", shape, std::to_string(report.distinct) + " distinct");
    c.line("no shorter 3-equivalent string", verify_optimal3_bruteforce(a));
    return c.status();
}

int verify_len74(const Options& o) {
    auto cert = verify74(parse(fixtures::len74(), Palette::standard(2)));
    if (o.json) {
        std::cout << cert.to_json().dump(2) << "\n";
        return cert.passed() ? kTrue : kFalse;
    }
    Checks c;
    for (const auto& check : cert.checks) c.line(check.name, check.passed, check.detail);
    c.all = c.all && cert.passed() && cert.checks.size() == 5;
    return c.status();
}

int verify_counts2(const Options&) {
    auto one = enumerate2(1, optimal_length_bound2(1));
    auto two = enumerate2(2, optimal_length_bound2(2));
    Checks c;
    c.line("two-colour ≡₂-classes = 90", two.count_using(2) == 90, std::to_string(two.count_using(2)));
    c.line("one-colour ≡₂-classes = 3", one.count_using(1) == 3, std::to_string(one.count_using(1)));
    c.line("classes over {r, b} = 97", two.records.size() == 97, std::to_string(two.records.size()));
    c.line("longest 2-optimal string (m=2) = 8", two.max_length() == 8, std::to_string(two.max_length()));
    return c.status();
}

int verify_counts3(const Options&) {
    Checks c;
    auto patterns = all_patterns(3);
    auto feasible_count = std::count_if(patterns.begin(), patterns.end(), [](const auto& p) { return feasible(p); });
    c.line("T-configurations (m=3) = 26, feasible = 22", patterns.size() == 26 && feasible_count == 22,
           std::to_string(patterns.size()) + ", " + std::to_string(feasible_count));
    auto cat = enumerate2(3, optimal_length_bound2(3));
    c.line("longest 2-optimal string (m=3) = 15", cat.max_length() == 15, std::to_string(cat.max_length()));
    const TPattern nested{{1, 0}, {2, 0}, {3, 0}, {0, 3}, {0, 2}, {0, 1}};
    auto in_pattern = std::count_if(cat.records.begin(), cat.records.end(),
                                    [&](const auto& r) { return r.descriptor.config.pattern == nested; });
    c.line("classes with pattern " + pattern_string(nested) + " = 18432", in_pattern == 18432,
           std::to_string(in_pattern));
    auto direct = direct_classes(3).size();
    c.line("three-colour classes match direct generation", direct == cat.count_using(3),
           std::to_string(cat.count_using(3)) + " swept, " + std::to_string(direct) + " generated");
    return c.status();
}

int cmd_verify(const Options& o) {
    if (o.name == "len70") return verify_len70(o);
    if (o.name == "palindrome15") return verify_palindrome15(o);
    if (o.name == "len74") return verify_len74(o);
    if (o.name == "counts2") return verify_counts2(o);
    if (o.name == "counts3") return verify_counts3(o);
    throw UsageError("unknown check '" + o.name + "' (expected len70, palindrome15, len74, counts2 or counts3)");
}

int cmd_serve(const Options& o, const Palette& palette) {
    SessionManager sessions(palette);
    httplib::Server server;
    mount_game_service(server, sessions);
    if (!server.bind_to_port(o.host, o.port)) throw UsageError("cannot bind " + o.host + ":" + std::to_string(o.port));
    std::cerr << "listening on http://" << o.host << ":" << o.port << "\n";
    server.listen_after_bind();
    return kTrue;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ehrenfeucht-Fraisse equivalence of finite coloured orders"};
    app.require_subcommand(1);
    Options o;

    auto add_m = [&](CLI::App* sub) {
        sub->add_option("-m,--colours", o.m, "palette size (glyphs r, b, g, ...)")->check(CLI::Range(1, 64));
    };
    auto add_inputs = [&](CLI::App* sub, const std::string& what) {
        sub->add_option("orders", o.inputs, what);
        sub->add_option("-f,--file", o.file, "read orders from a file, one per line");
        sub->add_option("--example", o.example, "built-in string: len70, len74, palindrome15");
        add_m(sub);
    };

    auto* equiv_cmd = app.add_subcommand("equiv", "are A and B n-equivalent?");
    add_inputs(equiv_cmd, "A and B");
    equiv_cmd->add_option("-n,--moves", o.n, "number of moves")->required();

    auto* canon_cmd = app.add_subcommand("canon", "2-optimal 2-equivalent subword");
    add_inputs(canon_cmd, "orders");

    auto* cut_cmd = app.add_subcommand("cut", "shorten while keeping (n+1)-equivalence");
    add_inputs(cut_cmd, "orders");
    cut_cmd->add_option("-n,--moves", o.n, "character level n")->required();

    auto* chars_cmd = app.add_subcommand("chars", "n-character of every point");
    add_inputs(chars_cmd, "order");
    chars_cmd->add_option("-n,--moves", o.n, "character level");
    chars_cmd->add_flag("--json", o.json);

    auto* enum_cmd = app.add_subcommand("enumerate", "catalogue of 2-equivalence classes");
    enum_cmd->add_option("-m,--colours", o.m, "colours (1 to 3)")->check(CLI::Range(1, 3));
    enum_cmd->add_option("--budget", o.budget, "longest string swept (default m^2+2m)");
    enum_cmd->add_flag("--json", o.json);
    enum_cmd->add_option("-o,--output", o.out, "output file");

    auto* db_cmd = app.add_subcommand("debruijn", "de Bruijn string of order k");
    db_cmd->add_option("-m,--colours", o.m)->check(CLI::Range(1, 26));
    db_cmd->add_option("-k", o.k, "window width");

    auto* dg_cmd = app.add_subcommand("digraph", "window digraph of a region, as DOT");
    add_inputs(dg_cmd, "order");
    dg_cmd->add_option("--region", o.region, "lo:hi, 1-based inclusive");
    dg_cmd->add_option("-k", o.k, "window width");
    dg_cmd->add_option("--dot", o.dot, "output file");

    auto* verify_cmd = app.add_subcommand("verify", "built-in checks");
    verify_cmd->add_option("check", o.name, "len70 | palindrome15 | len74 | counts2 | counts3")->required();
    verify_cmd->add_flag("--json", o.json);

    auto* serve_cmd = app.add_subcommand("serve", "game session service over HTTP");
    serve_cmd->add_option("--port", o.port)->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--host", o.host);
    add_m(serve_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        const auto palette = Palette::standard(o.m);
        if (*equiv_cmd) return cmd_equiv(o, palette);
        if (*canon_cmd) return cmd_canon(o, palette);
        if (*cut_cmd) return cmd_cut(o, palette);
        if (*chars_cmd) return cmd_chars(o, palette);
        if (*enum_cmd) return cmd_enumerate(o);
        if (*db_cmd) return cmd_debruijn(o);
        if (*dg_cmd) return cmd_digraph(o, palette);
        if (*verify_cmd) return cmd_verify(o);
        if (*serve_cmd) return cmd_serve(o, palette);
    } catch (const UsageError& e) {
        std::cerr << "efo: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "efo: " << e.what() << "\n";
        return kUsage;
    } catch (const BudgetError& e) {
        std::cerr << "efo: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "efo: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
