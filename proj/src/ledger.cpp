#include "levelbound/ledger.hpp"
#include "levelbound/errors.hpp"
#include "levelbound/heights.hpp"
#include "levelbound/zfactor.hpp"

#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace levelbound {

using json = nlohmann::ordered_json;

json render_real(double v) {
    if (v == 0.0)
        return json(0.0);
    // round to 12 significant digits; stored as a double so output stays
    // numeric and byte-stable
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return json(std::strtod(buf, nullptr));
}

json height_breakdown_json(const HeightBreakdown& b) {
    json h;
    h["height"] = render_real(b.height);
    h["finite_part"] = render_real(b.finite_part);
    h["archimedean_part"] = render_real(b.archimedean_part);
    h["N1"] = render_real(b.truncated);
    json contribs = json::array();
    for (auto& c : b.cusp_contributions) {
        json e;
        e["p"] = c.q.p.get_str();
        e["e"] = c.q.e;
        e["f"] = c.q.f;
        if (c.n.get_den() == 1)
            e["n"] = static_cast<long>(c.n.get_num().get_si());
        else
            e["n"] = c.n.get_str();
        contribs.push_back(e);
    }
    h["contributions"] = contribs;
    return h;
}

namespace {

std::string trimmed(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

mpq_class parse_rational(const std::string& tok) {
    std::string t = trimmed(tok);
    if (t.empty())
        throw error("empty coefficient");
    for (char c : t)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
              c == '+' || c == '/'))
            throw error("bad coefficient '" + t + "'");
    mpq_class q;
    if (q.set_str(t, 10) != 0)
        throw error("bad coefficient '" + t + "'");
    if (q.get_den() == 0)
        throw error("zero denominator in '" + t + "'");
    q.canonicalize();
    return q;
}

} // namespace

WeierstrassCurve parse_ainvs(const std::string& text) {
    std::string t = trimmed(text);
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']')
            throw error("unbalanced brackets in a-invariants");
        t = t.substr(1, t.size() - 2);
    }
    std::vector<mpq_class> vals;
    std::string cur;
    std::istringstream is(t);
    while (std::getline(is, cur, ','))
        vals.push_back(parse_rational(cur));
    if (vals.size() != 5)
        throw error("expected 5 a-invariants, got " + std::to_string(vals.size()));
    return WeierstrassCurve{{vals[0], vals[1], vals[2], vals[3], vals[4]}};
}

IngestResult ingest(std::istream& in, CorpusFormat format) {
    IngestResult out;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    bool header_done = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trimmed(line);
        if (t.empty() || t[0] == '#')
            continue;
        try {
            std::string label, rest;
            if (format == CorpusFormat::ainvs) {
                size_t colon = t.find(':');
                if (colon == std::string::npos)
                    throw error("missing 'label:' prefix");
                label = trimmed(t.substr(0, colon));
                rest = t.substr(colon + 1);
            } else {
                if (!header_done) {
                    header_done = true;
                    if (trimmed(t) != "label,a1,a2,a3,a4,a6")
                        throw error("bad csv header (expected label,a1,a2,a3,a4,a6)");
                    continue;
                }
                size_t comma = t.find(',');
                if (comma == std::string::npos)
                    throw error("missing fields");
                label = trimmed(t.substr(0, comma));
                rest = t.substr(comma + 1);
            }
            if (label.empty())
                throw error("empty label");
            if (!seen.insert(label).second)
                throw DuplicateLabel("duplicate label '" + label + "'");
            WeierstrassCurve E = parse_ainvs(rest);
            curve_invariants(E); // discriminant != 0
            out.records.push_back({label, E});
        } catch (const std::exception& e) {
            out.errors.emplace_back(lineno, e.what());
        }
    }
    return out;
}

IngestResult ingest_file(const std::string& path, CorpusFormat format) {
    std::ifstream in(path);
    if (!in) {
        IngestResult r;
        r.errors.emplace_back(0, "cannot open " + path);
        return r;
    }
    return ingest(in, format);
}

namespace {

json verdict_json(const Verdict& V) {
    json v;
    v["name"] = V.name;
    v["lhs"] = render_real(V.lhs);
    v["rhs"] = render_real(V.rhs);
    v["slack"] = render_real(V.slack);
    v["status"] = V.status_str();
    v["exact"] = V.exact;
    v["notes"] = V.notes;
    return v;
}

struct RecordOutcome {
    json doc;
    long pass = 0, fail = 0, unmet = 0;
    bool errored = false;
    std::map<int, long> full_level;
};

RecordOutcome process_record(const CurveRecord& rec, const LedgerOptions& opt) {
    RecordOutcome out;
    json& r = out.doc;
    r["label"] = rec.label;
    json ainvs = json::array();
    for (auto& a : rec.curve.a)
        ainvs.push_back(a.get_str());
    r["ainvs"] = ainvs;
    BoundParameters params = opt.paper_alpha ? BoundParameters::paper_mode()
                                             : BoundParameters::classical();
    try {
        auto I = curve_invariants(rec.curve);
        r["j"] = I.j.get_str();

        WeierstrassCurve Em = rec.curve.integral_model();
        auto Ii = curve_invariants(Em);
        auto breakdown = truncated_counting_q(I.j);
        r["height"] = height_breakdown_json(breakdown);

        // reduction table over the primes dividing the integral-model disc
        json red = json::array();
        for (auto& [p, e] : factor_integer(Ii.disc.get_num())) {
            auto R = tate_reduction(Em, p);
            json row;
            row["p"] = p.get_str();
            row["kodaira"] = R.kodaira.str();
            row["class"] = to_string(R.cls);
            row["v_min_disc"] = R.v_min_disc;
            if (R.c4_nonzero)
                row["v_c4"] = R.v_c4;
            else
                row["v_c4"] = nullptr;
            if (R.j_nonzero)
                row["v_j"] = R.v_j;
            else
                row["v_j"] = nullptr;
            row["cond_exponent"] = R.cond_exponent;
            row["potentially_multiplicative"] = R.potentially_multiplicative;
            red.push_back(row);
        }
        r["reduction"] = red;

        auto T = rational_torsion(Em);
        json tj;
        tj["order"] = T.order;
        tj["structure"] = T.structure();
        tj["count_gcd_bound"] = T.count_gcd_bound;
        r["torsion"] = tj;

        std::vector<Verdict> verdicts;
        verdicts.push_back(hasse_check(Em, opt.reduction_prime_bound));
        verdicts.push_back(torsion_injection_check(Em, opt.reduction_prime_bound));

        json levels = json::array();
        for (int p : opt.levels) {
            auto rep = full_level_detect(Em, p);
            json lj;
            lj["p"] = p;
            lj["has_rational_p_point"] = rep.has_rational_p_point;
            lj["full_level"] = rep.full_level;
            json kers = json::array();
            for (auto& k : rep.stable_kernels)
                kers.push_back(k.coeff_list());
            lj["stable_kernels"] = kers;
            lj["certificate"] = rep.certificate;
            levels.push_back(lj);
            if (rep.full_level) {
                out.full_level[p]++;
                auto B = curve_bound_report(Em, p, opt.eps, params);
                for (auto& V : B.verdicts)
                    verdicts.push_back(V);
            }
        }
        r["levels"] = levels;

        json vj = json::array();
        for (auto& V : verdicts) {
            vj.push_back(verdict_json(V));
            switch (V.status) {
            case Verdict::pass: ++out.pass; break;
            case Verdict::fail: ++out.fail; break;
            case Verdict::precondition_unmet: ++out.unmet; break;
            }
        }
        r["verdicts"] = vj;
        json counts;
        counts["pass"] = out.pass;
        counts["fail"] = out.fail;
        counts["precondition_unmet"] = out.unmet;
        r["counts"] = counts;
    } catch (const std::exception& e) {
        r["error"] = e.what();
        out.errored = true;
    }
    return out;
}

} // namespace

LedgerReport run_ledger(const std::vector<CurveRecord>& records,
                        const LedgerOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    int workers = 0;
    if (const char* env = std::getenv("LEVELBOUND_WORKERS"))
        workers = std::atoi(env);
    if (workers <= 0)
        workers = opt.workers;
    if (workers <= 0)
        workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0)
        workers = 1;
    workers = std::min<int>(workers, std::max<size_t>(records.size(), 1));

    std::vector<RecordOutcome> outcomes(records.size());
    if (workers <= 1 || records.size() <= 1) {
        for (size_t i = 0; i < records.size(); ++i)
            outcomes[i] = process_record(records[i], opt);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= records.size())
                        return;
                    outcomes[i] = process_record(records[i], opt);
                }
            });
        }
        for (auto& th : pool)
            th.join();
    }

    LedgerReport rep;
    json& doc = rep.doc;
    doc["tool"] = "levelbound";
    doc["version"] = "0.1.0";
    json params;
    json lv = json::array();
    for (int p : opt.levels)
        lv.push_back(p);
    params["levels"] = lv;
    params["eps"] = opt.eps.get_str();
    params["alpha_mode"] = opt.paper_alpha ? "paper" : "classical";
    params["reduction_prime_bound"] = opt.reduction_prime_bound;
    params["height_prime_bound"] = static_cast<long>(DEFAULT_PRIME_BOUND);
    doc["parameters"] = params;

    json curves = json::array();
    LedgerSummary& S = rep.summary;
    S.records = static_cast<long>(records.size());
    for (auto& o : outcomes) {
        curves.push_back(o.doc);
        S.pass += o.pass;
        S.fail += o.fail;
        S.precondition_unmet += o.unmet;
        if (o.errored)
            ++S.record_errors;
        for (auto& [p, c] : o.full_level)
            S.full_level_counts[p] += c;
    }
    doc["curves"] = curves;
    json summary;
    summary["records"] = S.records;
    summary["record_errors"] = S.record_errors;
    summary["pass"] = S.pass;
    summary["fail"] = S.fail;
    summary["precondition_unmet"] = S.precondition_unmet;
    json fl;
    for (auto& [p, c] : S.full_level_counts)
        fl[std::to_string(p)] = c;
    summary["full_level"] = fl;
    doc["summary"] = summary;

    auto t1 = std::chrono::steady_clock::now();
    rep.elapsed_ms =
        std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count() /
        1000.0;
    return rep;
}

} // namespace levelbound
