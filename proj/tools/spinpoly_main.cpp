// Command-line front end: exact point counts, Hilbert tables, Gorenstein
// certificates, parameter sweeps, and the identity verification suite.
//
// Exit codes: 0 success (or Gorenstein / no violations), 1 NotGorenstein or
// violations found, 2 bad input, 3 budget exhausted, 4 numerator extraction
// failed, 5 inconclusive verdict.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinpoly/gorenstein.hpp"
#include "spinpoly/hilbert.hpp"
#include "spinpoly/json_io.hpp"
#include "spinpoly/memo_store.hpp"
#include "spinpoly/symmetry.hpp"

using namespace spinpoly;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitExtraction = 4;
constexpr int kExitInconclusive = 5;

struct CommonOpts {
    std::string format = "text";
    std::string out;
    std::string cache;
    std::uint64_t budget = 400'000'000;
    int workers = 1;

    EnumLimits limits() const {
        EnumLimits l;
        l.node_limit = budget;
        l.workers = workers;
        return l;
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "Output format: text, json, or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", opts.out, "Write output to a file instead of stdout");
    cmd->add_option("--cache", opts.cache,
                    "Memo store path (default: $SPINPOLY_CACHE when set)");
    cmd->add_option("--budget", opts.budget, "Backtracking node budget");
    cmd->add_option("--workers", opts.workers, "Worker threads for enumeration");
}

std::string cache_path(const CommonOpts& opts) {
    if (!opts.cache.empty())
        return opts.cache;
    if (const char* env = std::getenv("SPINPOLY_CACHE"))
        return env;
    return {};
}

class Output {
public:
    explicit Output(const CommonOpts& opts) {
        if (!opts.out.empty()) {
            file_.open(opts.out, std::ios::trunc);
            if (!file_.is_open())
                throw Error("cannot open output file: " + opts.out);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct GraphSelection {
    std::string named;
    std::string caterpillar; // "g,n"
    std::vector<std::string> leaves;
    std::int64_t level = 0;

    TrivalentGraph graph() const {
        if (!named.empty() && !caterpillar.empty())
            throw Error("choose either --named or --caterpillar");
        if (!named.empty())
            return build_named(named);
        if (!caterpillar.empty()) {
            const auto comma = caterpillar.find(',');
            if (comma == std::string::npos)
                throw Error("--caterpillar expects g,n");
            return build_caterpillar(std::stoi(caterpillar.substr(0, comma)),
                                     std::stoi(caterpillar.substr(comma + 1)));
        }
        throw Error("a graph is required: --named NAME or --caterpillar g,n");
    }

    // Leaf values; the literal token L stands for the level.
    std::optional<std::vector<std::int64_t>> fixing() const {
        if (leaves.empty())
            return std::nullopt;
        std::vector<std::int64_t> r;
        for (const auto& tok : leaves) {
            if (tok == "L")
                r.push_back(level);
            else
                r.push_back(std::stoll(tok));
        }
        return r;
    }
};

void add_graph_selection(CLI::App* cmd, GraphSelection& sel) {
    cmd->add_option("--named", sel.named, "Built-in graph: trinode, theta, dumbbell, loop_with_leaf");
    cmd->add_option("--caterpillar", sel.caterpillar, "Caterpillar graph signature g,n");
    cmd->add_option("--leaves", sel.leaves,
                    "Fixed leaf values r1,r2,... (the token L stands for the level)")
        ->delimiter(',');
    cmd->add_option("--level", sel.level, "Level")->required();
}

// Parses "a" or "a..b" into an inclusive range.
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const std::int64_t v = std::stoll(s);
        return {v, v};
    }
    return {std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const BudgetExceeded*>(&e))
        return kExitBudget;
    if (dynamic_cast<const ExtractionFailed*>(&e))
        return kExitExtraction;
    return kExitBadInput;
}

// ---------------------------------------------------------------- count ---

int cmd_count(const GraphSelection& sel, const CommonOpts& opts, std::int64_t degree,
              bool interior, bool points) {
    PolytopeSpec spec(sel.graph(), sel.level, sel.fixing());
    Output output(opts);
    std::ostream& os = output.stream();
    if (points || opts.format == "json") {
        const auto pts = enumerate_lattice_points(spec, degree, interior, opts.limits());
        if (opts.format == "json") {
            Json j;
            j["spec"] = spec_to_json(spec);
            j["degree"] = degree;
            j["interior"] = interior;
            j["count"] = std::to_string(pts.size());
            if (points) {
                Json arr = Json::array();
                for (const auto& p : pts) {
                    Json jp;
                    jp["degree"] = degree;
                    jp["weights"] = p.w;
                    arr.push_back(std::move(jp));
                }
                j["points"] = std::move(arr);
            }
            os << j.dump(2) << "\n";
        } else {
            os << pts.size() << "\n";
            if (points) {
                for (const auto& p : pts) {
                    Json jp;
                    jp["degree"] = degree;
                    jp["weights"] = p.w;
                    os << jp.dump() << "\n";
                }
            }
        }
    } else {
        os << count_lattice_points(spec, degree, interior, opts.limits()) << "\n";
    }
    return kExitOk;
}

// -------------------------------------------------------------- hilbert ---

int cmd_hilbert(const GraphSelection& sel, const CommonOpts& opts, std::int64_t n_max) {
    PolytopeSpec spec(sel.graph(), sel.level, sel.fixing());
    const HilbertData data = hilbert_function(spec, n_max, opts.limits());
    std::optional<StanleyResult> stanley;
    if (data.hstar)
        stanley = stanley_check(data);

    Output output(opts);
    std::ostream& os = output.stream();
    if (opts.format == "json") {
        os << hilbert_to_json(spec, data, stanley).dump(2) << "\n";
    } else if (opts.format == "csv") {
        os << "N,count\n";
        for (std::size_t n = 0; n < data.values.size(); ++n)
            os << n << "," << data.values[n] << "\n";
    } else {
        for (std::size_t n = 0; n < data.values.size(); ++n)
            os << n << "\t" << data.values[n] << "\n";
        os << "ring_dim " << data.ring_dim << "\n";
        if (data.hstar) {
            os << "period " << data.denominator_period << "\nnumerator";
            for (const auto& c : *data.hstar)
                os << " " << c;
            os << "\nsymmetric " << (stanley->symmetric ? "yes" : "no") << "\na_invariant "
               << *stanley->a_invariant << "\n";
        } else {
            os << "numerator extraction failed within N_max\n";
        }
    }
    return data.hstar ? kExitOk : kExitExtraction;
}

// ------------------------------------------------------------ gorenstein ---

int verdict_exit(const GorensteinCertificate& cert) {
    switch (cert.verdict) {
    case Verdict::Gorenstein: return kExitOk;
    case Verdict::NotGorenstein: return kExitNegative;
    case Verdict::InconclusiveUpToBound: return kExitInconclusive;
    }
    return kExitBadInput;
}

int cmd_gorenstein(int g, int n, const std::vector<std::string>& leaves, std::int64_t level,
                   std::int64_t max_degree, const CommonOpts& opts) {
    std::vector<std::int64_t> r;
    for (const auto& tok : leaves)
        r.push_back(tok == "L" ? level : std::stoll(tok));
    if (n == 0 && !r.empty())
        throw Error("--n and --leaves disagree");
    if (n != 0 && static_cast<int>(r.size()) != n)
        throw Error("--n and --leaves disagree");
    GorensteinBudget budget;
    budget.max_degree = max_degree;
    budget.limits = opts.limits();
    const GorensteinCertificate cert = classify(g, static_cast<int>(r.size()), r, level, budget);
    Output output(opts);
    std::ostream& os = output.stream();
    if (opts.format == "text") {
        os << verdict_name(cert.verdict);
        if (cert.a_invariant)
            os << " a_invariant " << *cert.a_invariant;
        os << "\n";
    } else {
        os << certificate_to_json(cert).dump(2) << "\n";
    }
    return verdict_exit(cert);
}

// ---------------------------------------------------------------- sweep ---

int cmd_sweep(const std::string& g_range, const std::string& n_range,
              const std::string& level_range, const std::string& weights_mode,
              std::int64_t max_degree, const CommonOpts& opts) {
    const auto [g_lo, g_hi] = parse_range(g_range);
    const auto [n_lo, n_hi] = parse_range(n_range);
    const auto [l_lo, l_hi] = parse_range(level_range);

    MemoCache cache;
    const std::string path = cache_path(opts);
    std::optional<FileLock> lock;
    if (!path.empty()) {
        lock.emplace(path + ".lock");
        MemoStore::load(path).seed(cache);
    }

    Output output(opts);
    std::ostream& os = output.stream();
    os << "g,n,weights,level,count_degree1,verdict,a_invariant,method,crosschecked\n";

    bool budget_hit = false;
    for (std::int64_t g = g_lo; g <= g_hi && !budget_hit; ++g) {
        for (std::int64_t n = n_lo; n <= n_hi && !budget_hit; ++n) {
            for (std::int64_t L = l_lo; L <= l_hi && !budget_hit; ++L) {
                // weight tuples, nondecreasing to avoid permuted duplicates
                std::vector<std::vector<std::int64_t>> tuples;
                if (weights_mode == "zero" || n == 0) {
                    tuples.push_back(std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
                } else if (weights_mode == "level") {
                    tuples.push_back(std::vector<std::int64_t>(static_cast<std::size_t>(n), L));
                } else {
                    std::vector<std::int64_t> r(static_cast<std::size_t>(n),
                                                weights_mode == "interior" ? 1 : 0);
                    const std::int64_t hi = weights_mode == "interior" ? L - 1 : L;
                    if (r.empty() || r[0] <= hi) {
                        for (;;) {
                            tuples.push_back(r);
                            int i = static_cast<int>(n) - 1;
                            while (i >= 0 && r[static_cast<std::size_t>(i)] == hi)
                                --i;
                            if (i < 0)
                                break;
                            ++r[static_cast<std::size_t>(i)];
                            for (std::size_t j = static_cast<std::size_t>(i) + 1; j < r.size(); ++j)
                                r[j] = r[static_cast<std::size_t>(i)];
                        }
                    }
                }
                for (const auto& r : tuples) {
                    std::ostringstream weights;
                    for (std::size_t i = 0; i < r.size(); ++i) {
                        if (i)
                            weights << ",";
                        weights << r[i];
                    }
                    try {
                        GorensteinBudget budget;
                        budget.max_degree = max_degree;
                        budget.limits = opts.limits();
                        const auto cert =
                            classify(static_cast<int>(g), static_cast<int>(n), r, L, budget);
                        const BigInt phi1 = psi(static_cast<int>(g), static_cast<int>(n), r, L,
                                                PsiMethod::Recurse, &cache, opts.limits());
                        os << g << "," << n << "," << csv_quote(weights.str()) << "," << L << ","
                           << phi1 << "," << verdict_name(cert.verdict) << ","
                           << (cert.a_invariant ? std::to_string(*cert.a_invariant) : "") << ","
                           << method_name(cert.method) << ","
                           << (cert.crosschecked ? "yes" : "no") << "\n";
                    } catch (const BudgetExceeded&) {
                        os << g << "," << n << "," << csv_quote(weights.str()) << "," << L
                           << ",,budget_exceeded,,,\n";
                        budget_hit = true;
                        break;
                    }
                }
            }
        }
    }
    if (!path.empty()) {
        MemoStore store = MemoStore::load(path);
        store.absorb(cache);
        store.save(path);
    }
    return budget_hit ? kExitBudget : kExitOk;
}

// --------------------------------------------------------------- verify ---

int cmd_verify(const std::string& identity, const SampleSpace& space, const CommonOpts& opts) {
    MemoCache cache;
    VerifyReport report;
    if (identity.empty()) {
        report = verify_identities(space, &cache, opts.limits());
    } else {
        Identity id;
        if (identity == "vacuum")
            id = Identity::Vacuum;
        else if (identity == "permutation")
            id = Identity::Permutation;
        else if (identity == "factorization")
            id = Identity::Factorization;
        else if (identity == "flip")
            id = Identity::PairFlip;
        else if (identity == "graded-flip")
            id = Identity::GradedFlip;
        else if (identity == "graph-independence")
            id = Identity::GraphIndependence;
        else
            throw Error("unknown identity: " + identity);
        report = verify_identity(id, space, &cache, opts.limits());
    }
    Output output(opts);
    std::ostream& os = output.stream();
    if (opts.format == "json") {
        Json j;
        j["checks"] = report.checks;
        Json v = Json::array();
        for (const auto& violation : report.violations) {
            Json jv;
            jv["identity"] = violation.identity;
            jv["detail"] = violation.detail;
            v.push_back(std::move(jv));
        }
        j["violations"] = std::move(v);
        os << j.dump(2) << "\n";
    } else {
        for (const auto& violation : report.violations)
            os << "violation [" << violation.identity << "] " << violation.detail << "\n";
        os << report.checks << " checks, " << report.violations.size() << " violations\n";
    }
    return report.clean() ? kExitOk : kExitNegative;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact lattice-point engine for level-bounded weightings of trivalent graphs"};
    app.require_subcommand(1);

    // count
    auto* count = app.add_subcommand("count", "Count (or list) lattice points of a spec");
    GraphSelection count_sel;
    CommonOpts count_opts;
    std::int64_t count_degree = 1;
    bool count_interior = false;
    bool count_points = false;
    add_graph_selection(count, count_sel);
    add_common(count, count_opts);
    count->add_option("--degree", count_degree, "Grading degree (default 1)");
    count->add_flag("--interior", count_interior, "Count interior points only");
    count->add_flag("--points", count_points, "Print the point list");

    // hilbert
    auto* hilbert = app.add_subcommand("hilbert", "Exact Hilbert table with numerator extraction");
    GraphSelection hilbert_sel;
    CommonOpts hilbert_opts;
    std::int64_t hilbert_nmax = 12;
    add_graph_selection(hilbert, hilbert_sel);
    add_common(hilbert, hilbert_opts);
    hilbert->add_option("--nmax", hilbert_nmax, "Largest degree to tabulate (default 12)");

    // gorenstein
    auto* goren = app.add_subcommand("gorenstein", "Classify a weight signature; emits a certificate");
    CommonOpts goren_opts;
    int goren_g = 0;
    int goren_n = 0;
    std::vector<std::string> goren_leaves;
    std::int64_t goren_level = 0;
    std::int64_t goren_max_degree = 0;
    goren->add_option("--g", goren_g, "First Betti number / genus")->required();
    goren->add_option("--n", goren_n, "Number of leaves");
    goren->add_option("--leaves", goren_leaves, "Leaf weights (token L stands for the level)")
        ->delimiter(',');
    goren->add_option("--level", goren_level, "Level")->required();
    goren->add_option("--max-degree", goren_max_degree,
                      "Degree bound for the semigroup search (0 = automatic)");
    goren_opts.format = "json";
    add_common(goren, goren_opts);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Classify over a parameter grid; CSV output");
    CommonOpts sweep_opts;
    std::string sweep_g = "2", sweep_n = "0", sweep_level = "1..4", sweep_weights = "zero";
    std::int64_t sweep_max_degree = 0;
    sweep->add_option("--g", sweep_g, "Genus or range a..b");
    sweep->add_option("--n", sweep_n, "Leaf count or range a..b");
    sweep->add_option("--level", sweep_level, "Level or range a..b");
    sweep->add_option("--weights", sweep_weights,
                      "Weight tuples per (n, level): zero, level, interior, or all")
        ->check(CLI::IsMember({"zero", "level", "interior", "all"}));
    sweep->add_option("--max-degree", sweep_max_degree, "Degree bound for searches");
    add_common(sweep, sweep_opts);

    // verify
    auto* verify = app.add_subcommand("verify", "Check the count identities over a sample grid");
    CommonOpts verify_opts;
    std::string verify_identity_name;
    SampleSpace space;
    verify->add_option("--identity", verify_identity_name,
                       "One of: vacuum, permutation, factorization, flip, graded-flip, "
                       "graph-independence (default: all)");
    verify->add_option("--max-g", space.max_g, "Largest genus (default 2)");
    verify->add_option("--max-n", space.max_n, "Largest leaf count (default 3)");
    verify->add_option("--max-level", space.max_level, "Largest level (default 4)");
    verify->add_option("--max-degree", space.max_degree, "Largest degree (default 2)");
    add_common(verify, verify_opts);

    try {
        app.parse(argc, argv);
        if (count->parsed())
            return cmd_count(count_sel, count_opts, count_degree, count_interior, count_points);
        if (hilbert->parsed())
            return cmd_hilbert(hilbert_sel, hilbert_opts, hilbert_nmax);
        if (goren->parsed())
            return cmd_gorenstein(goren_g, goren_n, goren_leaves, goren_level, goren_max_degree,
                                  goren_opts);
        if (sweep->parsed())
            return cmd_sweep(sweep_g, sweep_n, sweep_level, sweep_weights, sweep_max_degree,
                             sweep_opts);
        if (verify->parsed())
            return cmd_verify(verify_identity_name, space, verify_opts);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kExitBadInput;
}
