#ifndef LEVELBOUND_LEDGER_HPP
#define LEVELBOUND_LEDGER_HPP

#include "levelbound/bounds.hpp"
#include "levelbound/ellcurve.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace levelbound {

struct CurveRecord {
    std::string label;
    WeierstrassCurve curve;
};

enum class CorpusFormat { ainvs, csv };

struct IngestResult {
    std::vector<CurveRecord> records;
    std::vector<std::pair<int, std::string>> errors; // line, reason
    bool ok() const { return errors.empty(); }
};

IngestResult ingest(std::istream& in, CorpusFormat format);
IngestResult ingest_file(const std::string& path, CorpusFormat format);

struct LedgerOptions {
    std::set<int> levels = {2, 3, 5, 7};
    mpq_class eps = make_rational(1, 2);
    bool paper_alpha = false;      // alpha = 1/1152 instead of 1
    long reduction_prime_bound = 200; // hasse / injection sweep
    int workers = 0;               // 0: hardware concurrency
};

struct LedgerSummary {
    long records = 0;
    long pass = 0;
    long fail = 0;
    long precondition_unmet = 0;
    long record_errors = 0;
    std::map<int, long> full_level_counts;
    bool any_fail() const { return fail > 0; }
};

struct LedgerReport {
    nlohmann::ordered_json doc;
    LedgerSummary summary;
    double elapsed_ms = 0; // reported separately; never serialized into doc
    std::string dump() const { return doc.dump(2) + "\n"; }
};

LedgerReport run_ledger(const std::vector<CurveRecord>& records,
                        const LedgerOptions& opt = {});

// reals rendered to 12 significant digits for stable reports
nlohmann::ordered_json render_real(double v);

// {height, finite_part, archimedean_part, N1, contributions: [{p,e,f,n}]}
nlohmann::ordered_json height_breakdown_json(const HeightBreakdown& b);

// a1,a2,a3,a4,a6 with integer or rational entries, optional [brackets]
WeierstrassCurve parse_ainvs(const std::string& text);

} // namespace levelbound

#endif
