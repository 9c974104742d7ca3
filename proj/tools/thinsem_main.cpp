// Command-line experiment runner: semigroup balls and trace statistics,
// Hausdorff dimensions, local densities, level-of-distribution sweeps,
// exponential sums, additive energy, geodesic heights and Pell searches.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "thinsem/analytic_sums.hpp"
#include "thinsem/dimension.hpp"
#include "thinsem/distribution.hpp"
#include "thinsem/factor.hpp"
#include "thinsem/geodesics.hpp"
#include "thinsem/local_densities.hpp"
#include "thinsem/pell.hpp"
#include "thinsem/semigroup.hpp"

using json = nlohmann::ordered_json;
using namespace thinsem;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    auto c1 = text.find(':');
    if (c1 != std::string::npos) {
        auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos) throw ValidationError("grid: expected start:stop:step");
        double start = std::stod(text.substr(0, c1));
        double stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        double step = std::stod(text.substr(c2 + 1));
        if (step <= 0) throw ValidationError("grid: step must be positive");
        for (double v = start; v <= stop + 1e-12; v += step) out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoll(tok));
    }
    return out;
}

// Shared per-invocation context: config echo, output routing, manifest.
struct Run {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
    std::string quantity;
    std::uint64_t seed = 12345;
    std::string outPath;
    std::string format = "csv";
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void set(const std::string& key, const std::string& value) { config.emplace_back(key, value); }

    std::string header() const {
        std::ostringstream os;
        os << "# thinsem " << command << " v" << kVersion << "\n";
        os << "# config:";
        for (const auto& [k, v] : config) os << " " << k << "=" << v;
        os << "\n";
        os << "# quantity: " << quantity << "\n";
        os << "# seed: " << seed << "\n";
        std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        os << "# generated: " << buf << "\n";
        return os.str();
    }

    json meta() const {
        json j;
        j["command"] = command;
        json cfg;
        for (const auto& [k, v] : config) cfg[k] = v;
        j["config"] = cfg;
        j["quantity"] = quantity;
        j["seed"] = seed;
        return j;
    }

    void emit(const std::string& csvBody, const json& result) {
        std::string payload;
        if (format == "json") {
            json j = meta();
            std::time_t now = std::time(nullptr);
            char buf[64];
            std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
            j["generated"] = buf;
            j["result"] = result;
            payload = j.dump(2) + "\n";
        } else {
            payload = header() + csvBody;
        }
        if (outPath.empty()) {
            std::cout << payload;
        } else {
            std::ofstream f(outPath);
            if (!f) throw ValidationError("cannot open output path " + outPath);
            f << payload;
            write_manifest();
        }
    }

    void write_manifest() const {
        json m = meta();
        m["version"] = kVersion;
        m["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();
        m["output"] = outPath;
        std::ofstream f(outPath + ".manifest.json");
        if (f) f << m.dump(2) << "\n";
    }
};

std::string rat_string(const Rat& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thin continued-fraction semigroups: enumeration and experiments"};
    app.require_subcommand(1);

    std::string alphabetText = "1,2", outPath, format = "csv";
    double bound = 100.0, tol = 1e-10, QParam = 8.0, Xparam = 6.0, Yparam = 100.0, Zparam = 6.0,
           Nparam = 0.0, delta = 5.0, Q0 = 2.0;
    int order = 32, threads = 0, tmax = 1000, almostR = -1, randomCount = 0, kParam = 0;
    std::uint64_t seed = 12345;
    std::int64_t qMod = 1, Bmod = 2, rMod = 3, aCoef = 1;
    std::string gridText, alphaText = "0.05:0.50:0.05", sText = "1,0,0,0", periodText,
                aEntriesText = "1,0,0,1";

    auto addCommon = [&](CLI::App* sub) {
        sub->add_option("--out", outPath, "output path (stdout when omitted)");
        sub->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--threads", threads, "worker thread cap (0 = auto)");
        sub->add_option("--seed", seed, "seed for randomized sampling");
    };

    auto* cmdBall = app.add_subcommand("ball", "enumerate a semigroup norm ball");
    cmdBall->add_option("--alphabet", alphabetText)->required();
    cmdBall->add_option("--bound", bound, "norm bound")->required();
    addCommon(cmdBall);

    auto* cmdTraces = app.add_subcommand("traces", "trace multiplicity table over a ball");
    cmdTraces->add_option("--alphabet", alphabetText)->required();
    cmdTraces->add_option("--bound", bound)->required();
    addCommon(cmdTraces);

    auto* cmdFig3 = app.add_subcommand("figure3", "multiplicity ratio table t vs M(t)/t^(2d-1)");
    cmdFig3->add_option("--alphabet", alphabetText, "defaults to 1-10");
    cmdFig3->add_option("--tmax", tmax, "largest trace (default 1000)");
    cmdFig3->add_option("--order", order, "collocation order for the dimension");
    addCommon(cmdFig3);

    auto* cmdDim = app.add_subcommand("dimension", "Hausdorff dimension of the Cantor set");
    cmdDim->add_option("--alphabet", alphabetText)->required();
    cmdDim->add_option("--order", order);
    cmdDim->add_option("--tol", tol);
    addCommon(cmdDim);

    auto* cmdBeta = app.add_subcommand("beta", "local density beta(q), exact rational");
    cmdBeta->add_option("--q", qMod)->required();
    addCommon(cmdBeta);

    auto* cmdLevel = app.add_subcommand("level", "remainder sums over square-free moduli");
    cmdLevel->add_option("--alphabet", alphabetText)->required();
    cmdLevel->add_option("--bound", bound, "norm bound N")->required();
    cmdLevel->add_option("--alpha", alphaText, "grid start:stop:step or comma list");
    addCommon(cmdLevel);

    auto* cmdAleph = app.add_subcommand("aleph", "equidistributing subset of the {1,2} semigroup");
    cmdAleph->add_option("--Y", Yparam, "norm budget")->required();
    cmdAleph->add_option("--B", Bmod, "pigeonhole modulus (square-free)");
    addCommon(cmdAleph);

    auto* cmdSeq = app.add_subcommand("sequence", "trace sequence a_N over Xi x aleph x Omega");
    cmdSeq->add_option("--alphabet", alphabetText)->required();
    cmdSeq->add_option("--N", Nparam, "N = X*Y*Z")->required();
    cmdSeq->add_option("--X", Xparam)->required();
    cmdSeq->add_option("--Y", Yparam)->required();
    cmdSeq->add_option("--Z", Zparam)->required();
    cmdSeq->add_option("--B", Bmod);
    addCommon(cmdSeq);

    auto* cmdE1 = app.add_subcommand("e1", "error sum over square-free q in [Q, 2Q)");
    cmdE1->add_option("--alphabet", alphabetText)->required();
    cmdE1->add_option("--Q", QParam)->required();
    cmdE1->add_option("--X", Xparam)->required();
    cmdE1->add_option("--Z", Zparam)->required();
    cmdE1->add_option("--a-entries", aEntriesText, "entries of the pivot matrix a,b,c,d");
    addCommon(cmdE1);

    auto* cmdExp = app.add_subcommand("expsum", "bump-weighted exponential sum over SL2(Z)");
    cmdExp->add_option("--bound", Xparam, "scale X")->required();
    cmdExp->add_option("--q", qMod)->required();
    cmdExp->add_option("--s", sText, "primitive vector a,b,c,d");
    cmdExp->add_option("--random-count", randomCount, "sample this many seeded primitive vectors");
    addCommon(cmdExp);

    auto* cmdGauss = app.add_subcommand("gauss", "quadratic Gauss sum S_r(a;k)");
    cmdGauss->add_option("--r", rMod)->required();
    cmdGauss->add_option("--a", aCoef)->required();
    cmdGauss->add_option("--k", kParam);
    addCommon(cmdGauss);

    auto* cmdEnergy = app.add_subcommand("energy", "additive energy of SL2(Z) norm balls");
    cmdEnergy->add_option("--bound", bound, "single X");
    cmdEnergy->add_option("--grid", gridText, "comma list of X values");
    addCommon(cmdEnergy);

    auto* cmdGeo = app.add_subcommand("geodesic", "apex height of a periodic quotient cycle");
    cmdGeo->add_option("--period", periodText, "comma list of partial quotients")->required();
    addCommon(cmdGeo);

    auto* cmdDisc = app.add_subcommand("discriminants", "square-free parts of t^2-4 over traces");
    cmdDisc->add_option("--alphabet", alphabetText)->required();
    cmdDisc->add_option("--bound", bound)->required();
    cmdDisc->add_option("--almost-prime", almostR, "census threshold R on Omega(sqf)");
    addCommon(cmdDisc);

    auto* cmdPell = app.add_subcommand("pell", "fundamental solution of t^2 - delta s^2 = 4");
    cmdPell->add_option("--delta", delta)->required();
    addCommon(cmdPell);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Run run;
    run.seed = seed;
    run.outPath = outPath;
    run.format = format;

    EnumerationOptions eopts;
    eopts.threads = threads;
    AnalyticOptions aopts;
    aopts.threads = threads;

    try {
        if (app.got_subcommand(cmdBall)) {
            run.command = "ball";
            Alphabet A = Alphabet::parse(alphabetText);
            run.set("alphabet", A.to_string());
            run.set("bound", fmt12(bound));
            run.quantity = "semigroup_norm_ball_elements";
            std::ostringstream body;
            body << "a,b,c,d,trace,normsq\n";
            json rows = json::array();
            enumerate_ball(A, bound, [&](const Mat2& m) {
                body << m.a << "," << m.b << "," << m.c << "," << m.d << "," << m.trace() << ","
                     << m.norm_sq() << "\n";
                if (format == "json")
                    rows.push_back({m.a.str(), m.b.str(), m.c.str(), m.d.str()});
            }, eopts);
            run.emit(body.str(), rows);
        } else if (app.got_subcommand(cmdTraces)) {
            run.command = "traces";
            Alphabet A = Alphabet::parse(alphabetText);
            run.set("alphabet", A.to_string());
            run.set("bound", fmt12(bound));
            run.quantity = "trace_multiplicities";
            auto stats = trace_multiplicities(A, bound, eopts);
            std::ostringstream body;
            write_trace_stats_csv(stats, body);
            json j;
            j["total"] = stats.total;
            json mult;
            for (auto& [t, m] : stats.multiplicities) mult[std::to_string(t)] = m;
            j["multiplicities"] = mult;
            run.emit(body.str(), j);
        } else if (app.got_subcommand(cmdFig3)) {
            run.command = "figure3";
            Alphabet A = cmdFig3->count("--alphabet") ? Alphabet::parse(alphabetText)
                                                      : alphabet_range(1, 10);
            run.set("alphabet", A.to_string());
            run.set("tmax", std::to_string(tmax));
            run.quantity = "trace_multiplicity_ratio_table";
            // every matrix with trace t has norm below 2t, so the ball of
            // norm 3*tmax counts every multiplicity up to tmax exactly
            auto stats = trace_multiplicities(A, 3.0 * tmax, eopts);
            auto dim = estimate_dimension(A, order, 1e-9);
            run.set("delta", fmt12(dim.delta));
            std::ostringstream body;
            body << "t,multiplicity,ratio\n";
            json rows = json::array();
            for (std::int64_t t = 2; t <= tmax; ++t) {
                std::uint64_t m = stats.multiplicity(t);
                double ratio = static_cast<double>(m) /
                               std::pow(static_cast<double>(t), 2.0 * dim.delta - 1.0);
                body << t << "," << m << "," << fmt12(ratio) << "\n";
                if (format == "json") rows.push_back({{"t", t}, {"m", m}, {"ratio", ratio}});
            }
            run.emit(body.str(), rows);
        } else if (app.got_subcommand(cmdDim)) {
            run.command = "dimension";
            Alphabet A = Alphabet::parse(alphabetText);
            run.set("alphabet", A.to_string());
            run.set("order", std::to_string(order));
            run.set("tol", fmt12(tol));
            run.quantity = "hausdorff_dimension";
            auto d = estimate_dimension(A, order, tol);
            json j;
            j["delta"] = d.delta;
            j["order"] = d.order;
            j["residual"] = d.residual;
            j["delta_doubled_order"] = d.deltaDoubledOrder;
            j["floored"] = d.floored;
            std::ostringstream body;
            body << "delta,order,residual,delta_doubled_order,floored\n"
                 << fmt12(d.delta) << "," << d.order << "," << fmt12(d.residual) << ","
                 << fmt12(d.deltaDoubledOrder) << "," << (d.floored ? 1 : 0) << "\n";
            run.emit(body.str(), j);
        } else if (app.got_subcommand(cmdBeta)) {
            run.command = "beta";
            run.set("q", std::to_string(qMod));
            run.quantity = "local_density_beta";
            Rat b = beta(Int(qMod));
            json j;
            j["q"] = qMod;
            j["beta"] = rat_string(b);
            run.emit(rat_string(b) + "\n", j);
        } else if (app.got_subcommand(cmdLevel)) {
            run.command = "level";
            Alphabet A = Alphabet::parse(alphabetText);
            auto grid = parse_grid(alphaText);
            run.set("alphabet", A.to_string());
            run.set("bound", fmt12(bound));
            run.set("alpha", alphaText);
            run.quantity = "remainder_ratio_by_level";
            auto rep = level_sweep(A, bound, grid, eopts);
            std::ostringstream body;
            body << "alpha,Q,sum_abs_r,total,ratio,sum_abs_r_beta,ratio_beta\n";
            json rows = json::array();
            for (const auto& row : rep.rows) {
                body << fmt12(row.alpha) << "," << fmt12(row.Q) << "," << fmt12(row.sumAbsR) << ","
                     << row.total << "," << fmt12(row.ratio) << "," << fmt12(row.sumAbsRBeta)
                     << "," << fmt12(row.ratioBeta) << "\n";
                if (format == "json")
                    rows.push_back({{"alpha", row.alpha},
                                    {"Q", row.Q},
                                    {"sum_abs_r", row.sumAbsR},
                                    {"total", row.total},
                                    {"ratio", row.ratio},
                                    {"sum_abs_r_beta", row.sumAbsRBeta},
                                    {"ratio_beta", row.ratioBeta}});
            }
            run.emit(body.str(), rows);
        } else if (app.got_subcommand(cmdAleph)) {
            run.command = "aleph";
            run.set("Y", fmt12(Yparam));
            run.set("B", std::to_string(Bmod));
            run.quantity = "equidistributing_subset";
            auto aleph = construct_aleph(Yparam, Bmod, eopts);
            std::ostringstream body;
            body << "q,discrepancy\n";
            json j;
            j["size"] = aleph.elements.size();
            j["T"] = aleph.T;
            json disc;
            for (auto& [q, d] : aleph.discrepancy) {
                body << q << "," << fmt12(d) << "\n";
                disc[std::to_string(q)] = d;
            }
            j["discrepancy"] = disc;
            run.emit(body.str(), j);
        } else if (app.got_subcommand(cmdSeq)) {
            run.command = "sequence";
            Alphabet A = Alphabet::parse(alphabetText);
            if (std::abs(Xparam * Yparam * Zparam - Nparam) > 1e-9 * std::max(1.0, Nparam))
                throw ValidationError("sequence: X*Y*Z must equal N");
            run.set("alphabet", A.to_string());
            run.set("N", fmt12(Nparam));
            run.set("X", fmt12(Xparam));
            run.set("Y", fmt12(Yparam));
            run.set("Z", fmt12(Zparam));
            run.set("B", std::to_string(Bmod));
            run.quantity = "trace_sequence_aN";
            auto aleph = construct_aleph(Yparam, Bmod, eopts);
            auto seq = build_sequence_aN(A, Xparam, Yparam, Zparam, aleph, eopts);
            std::ostringstream body;
            body << "n,a_n\n";
            for (auto& [n, an] : seq.a) body << n << "," << an << "\n";
            json j;
            j["mass"] = seq.mass;
            j["xi_count"] = seq.xiCount;
            j["aleph_count"] = seq.alephCount;
            j["omega_count"] = seq.omegaCount;
            run.emit(body.str(), j);
        } else if (app.got_subcommand(cmdE1)) {
            run.command = "e1";
            Alphabet A = Alphabet::parse(alphabetText);
            auto ae = parse_int_list(aEntriesText);
            if (ae.size() != 4) throw ValidationError("e1: --a-entries needs four integers");
            Mat2 aMat(ae[0], ae[1], ae[2], ae[3]);
            run.set("alphabet", A.to_string());
            run.set("Q", fmt12(QParam));
            run.set("X", fmt12(Xparam));
            run.set("Z", fmt12(Zparam));
            run.quantity = "dyadic_error_sum";
            auto r = error_sum_E1(A, QParam, aMat, Xparam, Zparam, eopts);
            json j;
            j["value_exact"] = r.valueExact;
            j["value"] = r.value;
            j["bound5"] = r.bound5;
            j["bound6"] = r.bound6;
            j["ratio5"] = r.ratio5;
            j["ratio6"] = r.ratio6;
            j["xi_count"] = r.xiCount;
            j["omega_count"] = r.omegaCount;
            j["moduli_count"] = r.moduli.size();
            std::ostringstream body;
            body << "value_exact,bound5,bound6,ratio5,ratio6\n"
                 << r.valueExact << "," << fmt12(r.bound5) << "," << fmt12(r.bound6) << ","
                 << fmt12(r.ratio5) << "," << fmt12(r.ratio6) << "\n";
            run.emit(body.str(), j);
        } else if (app.got_subcommand(cmdExp)) {
            run.command = "expsum";
            run.set("bound", fmt12(Xparam));
            run.set("q", std::to_string(qMod));
            run.quantity = "sl2_exponential_sum";
            auto phi = BumpFunction::standard();
            std::vector<std::array<std::int64_t, 4>> vectors;
            if (randomCount > 0) {
                vectors = seeded_primitive_vectors(randomCount, seed);
                run.set("random_count", std::to_string(randomCount));
            } else {
                auto sv = parse_int_list(sText);
                if (sv.size() != 4) throw ValidationError("expsum: --s needs four integers");
                vectors.push_back({sv[0], sv[1], sv[2], sv[3]});
                run.set("s", sText);
            }
            auto ball = enumerate_sl2_support(Xparam, phi, aopts);
            std::ostringstream body;
            body << "s1,s2,s3,s4,re,im,abs,bound,ratio\n";
            json rows = json::array();
            for (const auto& s : vectors) {
                auto r = exp_sum_sl2_prepared(ball, qMod, s, aopts);
                body << s[0] << "," << s[1] << "," << s[2] << "," << s[3] << ","
                     << fmt12(r.value.real()) << "," << fmt12(r.value.imag()) << ","
                     << fmt12(std::abs(r.value)) << "," << fmt12(r.boundRHS) << ","
                     << fmt12(r.ratio) << "\n";
                if (format == "json")
                    rows.push_back({{"s", s},
                                    {"re", r.value.real()},
                                    {"im", r.value.imag()},
                                    {"abs", std::abs(r.value)},
                                    {"bound", r.boundRHS},
                                    {"ratio", r.ratio},
                                    {"mass", r.mass}});
            }
            run.emit(body.str(), rows);
        } else if (app.got_subcommand(cmdGauss)) {
            run.command = "gauss";
            run.set("r", std::to_string(rMod));
            run.set("a", std::to_string(aCoef));
            run.set("k", std::to_string(kParam));
            run.quantity = "quadratic_gauss_sum";
            auto v = gauss_sum_Sr(rMod, aCoef, kParam);
            json j;
            j["re"] = v.real();
            j["im"] = v.imag();
            j["abs"] = std::abs(v);
            std::ostringstream body;
            body << "re,im,abs\n"
                 << fmt12(v.real()) << "," << fmt12(v.imag()) << "," << fmt12(std::abs(v)) << "\n";
            run.emit(body.str(), j);
        } else if (app.got_subcommand(cmdEnergy)) {
            run.command = "energy";
            std::vector<double> grid;
            if (!gridText.empty())
                grid = parse_grid(gridText);
            else
                grid = {bound};
            run.set("grid", gridText.empty() ? fmt12(bound) : gridText);
            run.quantity = "sl2_additive_energy";
            std::ostringstream body;
            body << "X,ball,E,diffE,fit\n";
            json rows = json::array();
            if (grid.size() >= 2) {
                auto fit = energy_fit(grid, aopts);
                for (const auto& r : fit.rows) {
                    body << fmt12(r.X) << "," << r.ball << "," << r.energy << "," << r.diffEnergy
                         << "," << fmt12(fit.exponent) << "\n";
                    if (format == "json")
                        rows.push_back({{"X", r.X},
                                        {"ball", r.ball},
                                        {"E", r.energy},
                                        {"diffE", r.diffEnergy},
                                        {"fit", fit.exponent}});
                }
            } else {
                auto r = additive_energy(grid[0], aopts);
                body << fmt12(r.X) << "," << r.ball << "," << r.energy << "," << r.diffEnergy
                     << ",\n";
                rows.push_back({{"X", r.X}, {"ball", r.ball}, {"E", r.energy},
                                {"diffE", r.diffEnergy}});
            }
            run.emit(body.str(), rows);
        } else if (app.got_subcommand(cmdGeo)) {
            run.command = "geodesic";
            auto period = parse_int_list(periodText);
            run.set("period", periodText);
            run.quantity = "geodesic_apex_height";
            double h = geodesic_height(period);
            json j;
            j["height"] = h;
            std::ostringstream body;
            body << "height\n" << fmt12(h) << "\n";
            run.emit(body.str(), j);
        } else if (app.got_subcommand(cmdDisc)) {
            run.command = "discriminants";
            Alphabet A = Alphabet::parse(alphabetText);
            run.set("alphabet", A.to_string());
            run.set("bound", fmt12(bound));
            run.quantity = "trace_discriminant_squarefree_parts";
            auto ds = discriminant_set(A, bound, eopts);
            std::ostringstream body;
            body << "t,D,sqf,omega\n";
            json rows = json::array();
            for (const auto& row : ds.rows) {
                body << row.t << "," << row.D << "," << row.sqf << "," << row.omega << "\n";
                if (format == "json")
                    rows.push_back({{"t", row.t},
                                    {"D", row.D.str()},
                                    {"sqf", row.sqf.str()},
                                    {"fundamental", row.fundamental.str()},
                                    {"omega", row.omega}});
            }
            json j;
            j["rows"] = rows;
            if (almostR >= 0) {
                run.set("almost_prime", std::to_string(almostR));
                std::uint64_t hits = 0;
                for (const auto& row : ds.rows)
                    if (row.omega <= almostR) ++hits;
                j["almost_prime_count"] = hits;
                j["almost_prime_ratio"] =
                    ds.rows.empty() ? 0.0 : double(hits) / double(ds.rows.size());
                std::ostringstream extra;
                extra << "# almost_prime_count(R=" << almostR << "): " << hits << " of "
                      << ds.rows.size() << "\n";
                run.emit(extra.str() + body.str(), j);
            } else {
                run.emit(body.str(), j);
            }
        } else if (app.got_subcommand(cmdPell)) {
            run.command = "pell";
            run.set("delta", fmt12(delta));
            run.quantity = "pell_fundamental_solution";
            auto sol = pell_fundamental(Int(static_cast<long long>(delta)));
            json j;
            j["t"] = sol.t.str();
            j["s"] = sol.s.str();
            std::ostringstream body;
            body << "t,s\n" << sol.t << "," << sol.s << "\n";
            run.emit(body.str(), j);
        }
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
