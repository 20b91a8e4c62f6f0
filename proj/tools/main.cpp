// rlnc: spread and hybrid codes on symbol-erasure network channels.
// Subcommands: tables, simulate, decode, verify.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <future>
#include <thread>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rlnc/channel.hpp"
#include "rlnc/count.hpp"
#include "rlnc/decode.hpp"
#include "rlnc/hybrid.hpp"
#include "rlnc/oracle.hpp"

using nlohmann::json;
using namespace rlnc;

namespace {

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw ConfigError("cannot open output file '" + out_path + "'");
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open input file '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

// ---------------------------------------------------------------------------
// tables

std::string render_comparison(const std::vector<ComparisonRow>& rows, bool as_json) {
    if (as_json) {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"n", r.n},
                           {"nprime", r.n_prime},
                           {"q_hybrid", r.q_hybrid},
                           {"rate_spread", fixed(r.rate_spread.approx(), 3)},
                           {"rate_hybrid", fixed(r.rate_hybrid.approx(), 3)},
                           {"e_avg", r.e_avg.str()},
                           {"e_h", r.e_h.str()}});
        return arr.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "n,nprime,rate_spread,rate_hybrid,e_avg,e_h\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.n_prime << ',' << fixed(r.rate_spread.approx(), 3) << ','
           << fixed(r.rate_hybrid.approx(), 3) << ',' << r.e_avg << ',' << r.e_h << '\n';
    return os.str();
}

std::string render_deletions(const std::vector<DeletionComparisonRow>& rows, bool as_json) {
    if (as_json) {
        json arr = json::array();
        for (const auto& r : rows) {
            json obj{{"n", r.n},
                     {"nprime", r.n_prime},
                     {"q_hybrid", r.q_hybrid},
                     {"rate_hybrid", fixed(r.rate_hybrid.approx(), 3)},
                     {"e_h", r.e_h_r.str()}};
            if (r.has_spread_cols) {
                obj["rate_spread"] = fixed(r.rate_spread.approx(), 3);
                obj["e_avg"] = r.e_avg_r.str();
            }
            arr.push_back(obj);
        }
        return arr.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "n,nprime,rate_spread,rate_hybrid,e_avg,e_h\n";
    for (const auto& r : rows) {
        os << r.n << ',' << r.n_prime << ',';
        if (r.has_spread_cols) os << fixed(r.rate_spread.approx(), 3);
        os << ',' << fixed(r.rate_hybrid.approx(), 3) << ',';
        if (r.has_spread_cols) os << r.e_avg_r;
        os << ',' << r.e_h_r << '\n';
    }
    return os.str();
}

std::string render_proportions(const std::vector<ProportionRow>& rows, bool as_json) {
    if (as_json) {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"role", r.role},
                           {"k", r.k},
                           {"n", r.n},
                           {"nprime", r.n_prime},
                           {"rate", fixed(r.rate.approx(), 5)},
                           {"log10_proportion",
                            static_cast<long long>(std::floor(static_cast<double>(r.log10_proportion)))}});
        return arr.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "role,k,n,nprime,rate,log10_proportion\n";
    for (const auto& r : rows)
        os << r.role << ',' << r.k << ',' << r.n << ','
           << (r.role == "hybrid" ? std::to_string(r.n_prime) : std::string()) << ','
           << fixed(r.rate.approx(), 5) << ','
           << static_cast<long long>(std::floor(static_cast<double>(r.log10_proportion))) << '\n';
    return os.str();
}

std::string render_counts(const std::vector<CountsRow>& rows, bool as_json) {
    if (as_json) {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back(
                {{"k", r.k}, {"n", r.n}, {"rec", r.rec.str()}, {"cec_avg", r.cec_avg.str()}});
        return arr.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "k,n,rec_count,cec_e_avg\n";
    for (const auto& r : rows) os << r.k << ',' << r.n << ',' << r.rec << ',' << r.cec_avg << '\n';
    return os.str();
}

int cmd_tables(const std::string& table, bool counts, unsigned k, unsigned max_n,
               const std::string& format, const std::string& out) {
    const bool as_json = format == "json";
    std::string text;
    if (counts) {
        text = render_counts(counts_table(k, max_n), as_json);
    } else if (table == "ex19a") {
        text = render_comparison(comparison_table(1), as_json);
    } else if (table == "ex19b") {
        text = render_comparison(comparison_table(2), as_json);
    } else if (table == "deletions") {
        text = render_deletions(deletions_table(), as_json);
    } else if (table == "hybspr") {
        text = render_proportions(hybrid_spread_proportions(), as_json);
    } else {
        throw ConfigError("pick --paper-table {ex19a,ex19b,deletions,hybspr} or --counts");
    }
    write_output(text, out);
    return 0;
}

// ---------------------------------------------------------------------------
// model/orientation handling

Orientation required_orientation(ChannelModel m) {
    switch (m) {
    case ChannelModel::Rec: return Orientation::PT;
    case ChannelModel::Cec: return Orientation::P;
    case ChannelModel::CecDeletions: return Orientation::PT;
    default: throw ConfigError("hybrid-cec uses a hybrid code, not a spread");
    }
}

SpreadCode spread_for_model(const std::string& spec, ChannelModel model, bool force_orientation) {
    SpreadCode parsed = parse_spread_spec(spec);
    Orientation need = required_orientation(model);
    bool explicit_orient = spec.find("orient=") != std::string::npos;
    if (parsed.orientation() == need) return parsed;
    if (explicit_orient && !force_orientation)
        throw ConfigError(std::string("model ") + model_name(model) + " needs orient=" +
                          (need == Orientation::PT ? "T" : "P") +
                          "; pass --force-orientation to keep the spec's choice");
    if (explicit_orient && force_orientation) return parsed;
    return SpreadCode(parsed.ext_ptr(), parsed.m(), need);
}

// ---------------------------------------------------------------------------
// simulate

struct TrialStats {
    std::uint64_t successes = 0, refusals = 0, wrong = 0;
    double decode_seconds = 0.0;
};

enum class TrialResult { Success, Refusal, Wrong };

struct TrialOutcome {
    TrialResult result;
    double decode_seconds;
};

// Trials run concurrently in index chunks; every trial derives its own
// stream from the master seed, so the aggregated counters are independent
// of the partitioning.
template <typename Fn>
TrialStats run_trials(std::uint64_t trials, const Fn& trial_fn) {
    TrialStats stats;
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t chunk = std::max<std::uint64_t>(64, (trials + workers - 1) / workers);
    std::vector<std::future<TrialStats>> parts;
    for (std::uint64_t begin = 0; begin < trials; begin += chunk) {
        const std::uint64_t end = std::min(trials, begin + chunk);
        parts.push_back(std::async(std::launch::async, [begin, end, &trial_fn] {
            TrialStats s;
            for (std::uint64_t t = begin; t < end; ++t) {
                TrialOutcome o = trial_fn(t);
                s.decode_seconds += o.decode_seconds;
                switch (o.result) {
                case TrialResult::Success: ++s.successes; break;
                case TrialResult::Refusal: ++s.refusals; break;
                case TrialResult::Wrong: ++s.wrong; break;
                }
            }
            return s;
        }));
    }
    for (auto& p : parts) {
        TrialStats s = p.get();
        stats.successes += s.successes;
        stats.refusals += s.refusals;
        stats.wrong += s.wrong;
        stats.decode_seconds += s.decode_seconds;
    }
    return stats;
}

template <typename Fn>
TrialOutcome timed_decode(const Fn& fn) {
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    try {
        bool ok = fn();
        return {ok ? TrialResult::Success : TrialResult::Wrong, elapsed()};
    } catch (const UndecodableError&) {
        return {TrialResult::Refusal, elapsed()};
    }
}

int cmd_simulate(const std::string& code_spec, const std::string& model_name_str,
                 unsigned erasures, const std::string& placement_name, unsigned block_limit,
                 unsigned deletions, std::uint64_t trials, std::uint64_t seed,
                 bool force_orientation, const std::string& format, const std::string& out) {
    ChannelModel model = parse_model(model_name_str);
    const bool as_json = format == "json";

    TrialStats stats;
    std::string resolved_code;

    if (model == ChannelModel::HybridCec) {
        HybridCode code = parse_hybrid_spec(code_spec);
        resolved_code = code.spec_string();
        std::string pname = placement_name.empty() ? "worst-cec" : placement_name;
        if (pname != "worst-cec" && pname != "uniform")
            throw ConfigError("hybrid-cec supports the worst-cec and uniform placements");
        Placement placement = pname == "uniform" ? Placement::uniform() : Placement::worst_cec();
        stats = run_trials(trials, [&](std::uint64_t t) {
            Rng rng = Rng::for_trial(seed, t);
            Subspace sent(random_matrix(code.field_ptr(), code.k(), code.n_prime(), code.k(), rng));
            MatFq a = random_full_rank(code.field_ptr(), code.k(), rng);
            ErasurePattern e = sample_pattern(code.k(), code.n(), erasures, placement, rng);
            ErasableMatrix obs = apply_cec(code.encode(sent), a, e);
            return timed_decode([&] { return code.decode_cec(obs) == sent; });
        });
    } else {
        SpreadCode code = spread_for_model(code_spec, model, force_orientation);
        resolved_code = code.spec_string();
        if (model != ChannelModel::CecDeletions && deletions > 0)
            throw ConfigError("--deletions applies to the cec-del model only");
        if (model == ChannelModel::CecDeletions && deletions >= code.k())
            throw ConfigError("deletions must be < k");
        const unsigned k = code.k(), n = code.n(), m = code.m();

        std::string pname = placement_name;
        if (pname.empty()) pname = model == ChannelModel::Rec ? "worst-rec" : "per-block";
        if (pname != "uniform" && pname != "worst-rec" && pname != "worst-cec" &&
            pname != "per-block")
            throw ConfigError("unknown placement '" + pname + "'");

        stats = run_trials(trials, [&](std::uint64_t t) {
            Rng rng = Rng::for_trial(seed, t);
            GrassmannPoint u = code.random_point(rng);
            MatFq a = model == ChannelModel::CecDeletions
                          ? random_matrix(code.field_ptr(), k, k, k - deletions, rng)
                          : random_full_rank(code.field_ptr(), k, rng);

            Placement placement = Placement::uniform();
            if (pname == "worst-rec") placement = Placement::worst_rec();
            else if (pname == "worst-cec") placement = Placement::worst_cec();
            else if (pname == "per-block") {
                unsigned limit = block_limit ? block_limit : k - deletions - 1;
                std::vector<unsigned> nonzero;
                for (unsigned b = 0; b < m; ++b)
                    if (!u.at(b).is_zero()) nonzero.push_back(b);
                placement = Placement::per_block(limit, nonzero[rng.below(nonzero.size())]);
            }
            ErasurePattern e = sample_pattern(k, n, erasures, placement, rng);
            ChannelOutcome outcome = transmit(code.encode(u), a, e, model);

            if (model == ChannelModel::Rec) {
                const MatFq& obs = std::get<MatFq>(outcome.observation);
                return timed_decode([&] { return decode_rec(code, obs).point == u; });
            }
            const ErasableMatrix& obs = std::get<ErasableMatrix>(outcome.observation);
            if (model == ChannelModel::Cec)
                return timed_decode([&] { return decode_cec(code, obs).point == u; });
            return timed_decode([&] { return decode_cec_with_deletions(code, obs).point == u; });
        });
    }

    // decode timing goes to stderr only, keeping the report bit-identical
    // across runs with the same seed
    if (trials > 0)
        std::cerr << "mean decode time: "
                  << fixed(stats.decode_seconds / static_cast<double>(trials) * 1e6, 3)
                  << " us/trial\n";

    double rate = trials ? static_cast<double>(stats.successes) / static_cast<double>(trials) : 0.0;
    if (as_json) {
        json obj{{"code", resolved_code},
                 {"model", model_name_str},
                 {"trials", trials},
                 {"erasures", erasures},
                 {"seed", seed},
                 {"successes", stats.successes},
                 {"refusals", stats.refusals},
                 {"wrong", stats.wrong},
                 {"success_rate", fixed(rate, 6)}};
        if (trials == 0) obj["note"] = "empty report";
        write_output(obj.dump(2) + "\n", out);
    } else {
        std::ostringstream os;
        os << "code,model,trials,erasures,seed,successes,refusals,wrong,success_rate\n";
        if (trials > 0)
            os << resolved_code << ',' << model_name_str << ',' << trials << ',' << erasures << ','
               << seed << ',' << stats.successes << ',' << stats.refusals << ',' << stats.wrong
               << ',' << fixed(rate, 6) << '\n';
        write_output(os.str(), out);
    }
    return stats.wrong == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// decode

int cmd_decode(const std::string& code_spec, const std::string& model_name_str,
               const std::string& in_path, bool force_orientation, const std::string& out) {
    ChannelModel model = parse_model(model_name_str);
    std::string text = read_file(in_path);
    std::ostringstream os;

    if (model == ChannelModel::HybridCec) {
        HybridCode code = parse_hybrid_spec(code_spec);
        Subspace got = code.decode_cec(parse_erasable(code.field_ptr(), text));
        os << to_text(got.basis());
    } else {
        SpreadCode code = spread_for_model(code_spec, model, force_orientation);
        DecodeReport rep = [&] {
            if (model == ChannelModel::Rec)
                return decode_rec(code, parse_matrix(code.field_ptr(), text));
            ErasableMatrix obs = parse_erasable(code.field_ptr(), text);
            if (model == ChannelModel::Cec) return decode_cec(code, obs);
            return decode_cec_with_deletions(code, obs);
        }();
        os << "point: " << rep.point.to_string() << '\n';
        os << to_text(code.encode(rep.point), code.k());
    }
    write_output(os.str(), out);
    return 0;
}

// ---------------------------------------------------------------------------
// verify

json verify_rec_count(std::uint64_t budget, kernels::Backend backend) {
    json suite{{"name", "rec-count"}, {"entries", json::array()}, {"match", true}};
    for (auto [k, n] :
         std::vector<std::pair<unsigned, unsigned>>{{1, 4}, {2, 4}, {2, 6}, {3, 6}, {2, 8}}) {
        if ((std::uint64_t(1) << (k * n)) > budget) continue;
        BigInt formula = rec_count(k, n);
        BigInt oracle = oracle_rec_count(2, k, n, budget, backend);
        bool ok = formula == oracle;
        suite["entries"].push_back({{"params", {{"k", k}, {"n", n}}},
                                    {"formula", formula.str()},
                                    {"oracle", oracle.str()},
                                    {"match", ok}});
        if (!ok) suite["match"] = false;
    }
    return suite;
}

json verify_cec_bound(std::uint64_t budget) {
    json suite{{"name", "cec-bound"}, {"entries", json::array()}, {"match", true}};
    SpreadCode code(ExtField::make(BaseField::make(2), 2), 2, Orientation::P);
    CecCountReport rep = oracle_cec_counts(code, budget);
    for (const auto& [point, count] : rep.per_codeword) {
        unsigned ell = 0;
        for (unsigned b = point.leading_index() + 1; b < code.m(); ++b)
            if (!point.at(b).is_zero()) ++ell;
        BigInt bound = cec_counts(2, 2, 2, ell).e_ell;
        bool ok = BigInt(count) >= bound;
        suite["entries"].push_back({{"params", {{"codeword", point.to_string()}, {"ell", ell}}},
                                    {"formula", bound.str()},
                                    {"oracle", std::to_string(count)},
                                    {"match", ok}});
        if (!ok) suite["match"] = false;
    }
    BigRat avg_formula = cec_counts(2, 2, 2, 0).e_avg;
    bool avg_ok = rep.average >= avg_formula;
    suite["entries"].push_back({{"params", {{"quantity", "code-average"}}},
                                {"formula", avg_formula.str()},
                                {"oracle", rep.average.str()},
                                {"match", avg_ok}});
    if (!avg_ok) suite["match"] = false;
    return suite;
}

json verify_agreement(std::uint64_t budget) {
    json suite{{"name", "decoder-agreement"}, {"entries", json::array()}, {"match", true}};
    auto push = [&](const std::string& which, const AgreementReport& rep) {
        bool ok = rep.all_agree();
        suite["entries"].push_back(
            {{"params", {{"setup", which}}},
             {"formula", "0 disagreements"},
             {"oracle", std::to_string(rep.wrong_decodes + rep.missed_decodes +
                                       rep.family_uncorrectable)},
             {"cases", rep.cases},
             {"match", ok}});
        if (!ok) suite["match"] = false;
    };
    auto f2 = BaseField::make(2);
    push("rec q=2 k=2 m=2 exhaustive",
         decoder_agreement_rec(SpreadCode(ExtField::make(f2, 2), 2, Orientation::PT), budget));
    push("cec q=2 k=2 m=2 exhaustive",
         decoder_agreement_cec(SpreadCode(ExtField::make(f2, 2), 2, Orientation::P), budget));
    push("cec-del q=2 k=3 m=2 r=1 sampled 10000",
         decoder_agreement_cec_deletions(SpreadCode(ExtField::make(f2, 3), 2, Orientation::PT), 1,
                                         10000, 20240601));
    return suite;
}

int cmd_verify(const std::string& which, std::uint64_t budget, const std::string& backend_str,
               const std::string& out) {
    kernels::Backend backend = kernels::Backend::Auto;
    if (backend_str == "scalar") backend = kernels::Backend::Scalar;
    else if (backend_str == "avx2") backend = kernels::Backend::Avx2;
    else if (backend_str != "auto") throw ConfigError("--backend must be auto, scalar or avx2");

    json report{{"budget", budget},
                {"backend", kernels::backend_name(kernels::resolve(backend))},
                {"suites", json::array()}};
    if (which == "all" || which == "rec-count")
        report["suites"].push_back(verify_rec_count(budget, backend));
    if (which == "all" || which == "cec-bound") report["suites"].push_back(verify_cec_bound(budget));
    if (which == "all" || which == "decoder-agreement")
        report["suites"].push_back(verify_agreement(budget));
    if (report["suites"].empty())
        throw ConfigError("pick --suite {all,rec-count,cec-bound,decoder-agreement}");

    bool all = true;
    for (const auto& s : report["suites"]) all = all && s["match"].get<bool>();
    report["all_match"] = all;
    write_output(report.dump(2) + "\n", out);
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spread and hybrid codes for symbol-erasure network channels"};
    app.require_subcommand(1);

    std::string out, format = "csv";

    auto* tables = app.add_subcommand("tables", "reproduce the published comparison tables");
    std::string paper_table;
    bool counts = false;
    unsigned counts_k = 3, counts_max_n = 30;
    tables->add_option("--paper-table", paper_table, "ex19a, ex19b, deletions or hybspr");
    tables->add_flag("--counts", counts, "REC/CEC correctable-count series (q=2)");
    tables->add_option("--k", counts_k, "dimension for --counts");
    tables->add_option("--max-n", counts_max_n, "largest n for --counts");
    tables->add_option("--out", out, "output file (default stdout)");
    tables->add_option("--format", format, "csv or json");

    auto* sim = app.add_subcommand("simulate", "seeded Monte-Carlo channel trials");
    std::string code_spec, model, placement;
    unsigned erasures = 0, block_limit = 0, deletions = 0;
    std::uint64_t trials = 1000, seed = 1;
    bool force_orientation = false;
    sim->add_option("--code", code_spec, "code spec string")->required();
    sim->add_option("--model", model, "rec, cec, cec-del or hybrid-cec")->required();
    sim->add_option("--erasures", erasures, "symbol erasures per trial");
    sim->add_option("--placement", placement, "uniform, worst-rec, worst-cec or per-block");
    sim->add_option("--block-limit", block_limit, "per-block column budget for per-block placement");
    sim->add_option("--deletions", deletions, "rank loss for cec-del");
    sim->add_option("--trials", trials, "number of trials");
    sim->add_option("--seed", seed, "master seed");
    sim->add_flag("--force-orientation", force_orientation,
                  "keep the spec's orientation even if the model disagrees");
    sim->add_option("--out", out, "output file (default stdout)");
    sim->add_option("--format", format, "csv or json");

    auto* dec = app.add_subcommand("decode", "decode one observation file");
    std::string in_path;
    dec->add_option("--code", code_spec, "code spec string")->required();
    dec->add_option("--model", model, "rec, cec, cec-del or hybrid-cec")->required();
    dec->add_option("--in", in_path, "observation file (matrix text format)")->required();
    dec->add_flag("--force-orientation", force_orientation,
                  "keep the spec's orientation even if the model disagrees");
    dec->add_option("--out", out, "output file (default stdout)");

    auto* ver = app.add_subcommand("verify", "run the brute-force oracle suites");
    std::string suite = "all", backend = "auto";
    std::uint64_t budget = std::uint64_t(1) << 24;
    ver->add_option("--suite", suite, "all, rec-count, cec-bound or decoder-agreement");
    ver->add_option("--budget", budget, "enumeration budget");
    ver->add_option("--backend", backend, "auto, scalar or avx2");
    ver->add_option("--out", out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (tables->parsed())
            return cmd_tables(paper_table, counts, counts_k, counts_max_n, format, out);
        if (sim->parsed())
            return cmd_simulate(code_spec, model, erasures, placement, block_limit, deletions,
                                trials, seed, force_orientation, format, out);
        if (dec->parsed()) return cmd_decode(code_spec, model, in_path, force_orientation, out);
        if (ver->parsed()) return cmd_verify(suite, budget, backend, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
