#include <CLI11.hpp>
#include <json.hpp>

#include "levelbound/bounds.hpp"
#include "levelbound/errors.hpp"
#include "levelbound/heights.hpp"
#include "levelbound/ledger.hpp"
#include "levelbound/toric.hpp"
#include "levelbound/zfactor.hpp"

#include <fstream>
#include <iostream>

using json = nlohmann::ordered_json;
using namespace levelbound;

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_USAGE = 1;
constexpr int EXIT_INPUT = 2;
constexpr int EXIT_VIOLATION = 3;

int cmd_bounds(int degree) {
    json out;
    out["degree"] = degree;
    out["gamma"] = render_real(gamma(degree));
    out["min_forced_prime"] = min_forced_prime(degree).get_str();
    std::cout << out.dump(2) << "\n";
    return EXIT_OK;
}

json field_report(const NumberField& K) {
    json f;
    f["poly"] = K.serialize();
    f["degree"] = K.degree;
    if (K.disc_exact()) {
        f["disc"] = K.disc().get_str();
        auto rep = rel_log_disc(K);
        f["rel_log_disc"] = render_real(rep.total_value());
        json local;
        for (auto& [p, c] : rep.local_coeff)
            local[p.get_str()] = render_real(rep.local_value(p));
        f["rel_log_disc_local"] = local;
    } else {
        f["disc"] = nullptr;
        json iv;
        iv["abs_lo"] = K.field_disc.abs_lo.get_str();
        iv["abs_hi"] = K.field_disc.abs_hi.get_str();
        f["disc_interval"] = iv;
    }
    json cert;
    for (auto& [p, ok] : K.index_certified_primes)
        cert[p.get_str()] = ok;
    f["index_certified_primes"] = cert;
    return f;
}

int cmd_field(const std::string& poly, long prime) {
    NumberField K = make_field(IntPoly::parse_coeff_list(poly));
    json out = field_report(K);
    if (prime > 0) {
        json fac = json::array();
        for (auto& q : factor_prime(K, prime)) {
            json e;
            e["p"] = q.p.get_str();
            e["e"] = q.e;
            e["f"] = q.f;
            e["kernel_poly"] = q.kernel_poly.coeff_list();
            fac.push_back(e);
        }
        out["factorization"] = fac;
    }
    std::cout << out.dump(2) << "\n";
    return EXIT_OK;
}

int cmd_curve(const std::string& ainvs, long prime, int level) {
    WeierstrassCurve E = parse_ainvs(ainvs);
    auto I = curve_invariants(E);
    json out;
    out["ainvs"] = ainvs;
    out["disc"] = I.disc.get_str();
    out["c4"] = I.c4.get_str();
    out["c6"] = I.c6.get_str();
    out["j"] = I.j.get_str();
    auto b = truncated_counting_q(I.j);
    out["height"] = height_breakdown_json(b);
    WeierstrassCurve Em = E.integral_model();
    json red = json::array();
    auto add_reduction = [&](const mpz_class& p) {
        auto R = tate_reduction(Em, p);
        json row;
        row["p"] = p.get_str();
        row["kodaira"] = R.kodaira.str();
        row["class"] = to_string(R.cls);
        row["v_min_disc"] = R.v_min_disc;
        row["cond_exponent"] = R.cond_exponent;
        row["potentially_multiplicative"] = R.potentially_multiplicative;
        red.push_back(row);
    };
    if (prime > 0) {
        add_reduction(prime);
    } else {
        auto Ii = curve_invariants(Em);
        for (auto& [p, e] : factor_integer(Ii.disc.get_num()))
            add_reduction(p);
    }
    out["reduction"] = red;
    if (level > 0) {
        auto rep = full_level_detect(Em, level);
        json lj;
        lj["p"] = level;
        lj["has_rational_p_point"] = rep.has_rational_p_point;
        lj["full_level"] = rep.full_level;
        json kers = json::array();
        for (auto& k : rep.stable_kernels)
            kers.push_back(k.coeff_list());
        lj["stable_kernels"] = kers;
        lj["certificate"] = rep.certificate;
        out["level"] = lj;
    }
    std::cout << out.dump(2) << "\n";
    return EXIT_OK;
}

int cmd_toric(int rank, long m) {
    PullbackWitness w;
    json out;
    out["r"] = rank;
    out["m"] = m;
    out["sym2_rank"] = sym2_rank(rank);
    out["refinement_index"] = refinement_index(rank, m).get_str();
    out["boundary_pullback_multiplicity"] =
        boundary_pullback_multiplicity(m, rank, &w);
    json wj;
    json lam = json::array(), rho = json::array(), lam_ref = json::array();
    for (auto& v : w.character)
        lam.push_back(v.get_str());
    for (auto& v : w.ray)
        rho.push_back(v.get_str());
    for (auto& v : w.character_refined)
        lam_ref.push_back(v.get_str());
    wj["character"] = lam;
    wj["ray"] = rho;
    wj["character_in_refined_lattice"] = lam_ref;
    wj["pairing_base"] = w.pairing_base.get_str();
    wj["pairing_refined"] = w.pairing_refined.get_str();
    out["witness"] = wj;
    std::cout << out.dump(2) << "\n";
    return EXIT_OK;
}

int cmd_ledger(const std::string& input, const std::string& format,
               const std::string& levels, const std::string& eps,
               const std::string& alpha_mode, const std::string& output,
               int workers) {
    CorpusFormat fmt;
    if (format == "ainvs")
        fmt = CorpusFormat::ainvs;
    else if (format == "csv")
        fmt = CorpusFormat::csv;
    else {
        std::cerr << "unknown format: " << format << "\n";
        return EXIT_USAGE;
    }
    auto ing = ingest_file(input, fmt);
    if (!ing.ok()) {
        for (auto& [line, reason] : ing.errors)
            std::cerr << input << ":" << line << ": " << reason << "\n";
        return EXIT_INPUT;
    }
    LedgerOptions opt;
    opt.levels.clear();
    {
        std::istringstream is(levels);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            int p = std::stoi(tok);
            if (p != 2 && p != 3 && p != 5 && p != 7) {
                std::cerr << "levels must be among 2,3,5,7\n";
                return EXIT_USAGE;
            }
            opt.levels.insert(p);
        }
    }
    mpq_class e;
    if (e.set_str(eps, 10) != 0 || e <= 0) {
        std::cerr << "bad eps: " << eps << "\n";
        return EXIT_USAGE;
    }
    e.canonicalize();
    opt.eps = e;
    if (alpha_mode == "paper")
        opt.paper_alpha = true;
    else if (alpha_mode != "classical") {
        std::cerr << "alpha-mode must be classical or paper\n";
        return EXIT_USAGE;
    }
    opt.workers = workers;
    auto rep = run_ledger(ing.records, opt);
    std::string text = rep.dump();
    if (output.empty() || output == "-") {
        std::cout << text;
    } else {
        std::ofstream os(output, std::ios::binary);
        if (!os) {
            std::cerr << "cannot write " << output << "\n";
            return EXIT_INPUT;
        }
        os << text;
    }
    std::cerr << "ledger: " << rep.summary.records << " records, "
              << rep.summary.pass << " pass, " << rep.summary.fail << " fail, "
              << rep.summary.precondition_unmet << " unmet ("
              << rep.elapsed_ms << " ms)\n";
    if (rep.summary.any_fail() || rep.summary.record_errors > 0)
        return EXIT_VIOLATION;
    return EXIT_OK;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantitative level-structure toolkit for elliptic curves"};
    app.require_subcommand(1);

    int degree = 1;
    auto* sb = app.add_subcommand("bounds", "print gamma and the least forced prime");
    sb->add_option("--degree", degree, "base field degree")->required();

    std::string poly;
    long field_prime = 0;
    auto* sf = app.add_subcommand("field", "number field report / prime factorization");
    sf->add_option("--poly", poly, "defining polynomial c0,c1,...,1")->required();
    sf->add_option("--prime", field_prime, "factor this prime in the field");

    std::string ainvs;
    long curve_prime = 0;
    int curve_level = 0;
    auto* sc = app.add_subcommand("curve", "invariants, reduction, level report");
    sc->add_option("--ainvs", ainvs, "a1,a2,a3,a4,a6")->required();
    sc->add_option("--prime", curve_prime, "reduction at this prime only");
    sc->add_option("--level", curve_level, "full level-p detection (p <= 7)");

    std::string input, format = "ainvs", levels = "2,3,5,7", eps = "1/2",
                alpha_mode = "classical", output;
    int workers = 0;
    auto* sl = app.add_subcommand("ledger", "batch verification over a curve corpus");
    sl->add_option("--input", input, "corpus file")->required();
    sl->add_option("--format", format, "ainvs|csv");
    sl->add_option("--levels", levels, "comma-separated subset of 2,3,5,7");
    sl->add_option("--eps", eps, "epsilon as a rational, e.g. 1/2");
    sl->add_option("--alpha-mode", alpha_mode, "classical|paper");
    sl->add_option("--output", output, "report path (default stdout)");
    sl->add_option("--workers", workers, "worker threads (0 = auto)");

    int rank = 1;
    long level_m = 1;
    auto* st = app.add_subcommand("toric", "boundary lattice computations");
    st->add_option("--rank", rank, "r of Sym^2 Z^r")->required();
    st->add_option("--level", level_m, "refinement level m")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? EXIT_OK : EXIT_USAGE;
    }

    try {
        if (sb->parsed())
            return cmd_bounds(degree);
        if (sf->parsed())
            return cmd_field(poly, field_prime);
        if (sc->parsed())
            return cmd_curve(ainvs, curve_prime, curve_level);
        if (sl->parsed())
            return cmd_ledger(input, format, levels, eps, alpha_mode, output,
                              workers);
        if (st->parsed())
            return cmd_toric(rank, level_m);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_INPUT;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_INPUT;
    }
    return EXIT_USAGE;
}
