#ifndef HPQ_REPORT_HPP
#define HPQ_REPORT_HPP

#include "hpq/classification.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace hpq {

using Json = nlohmann::ordered_json;

Json to_json(const Vec &v);
Json to_json(const BundleMetricParams &params);
Json to_json(const ResidualReport &report, bool per_point = false);
Json to_json(const IdentityReport &report);
Json to_json(const ClassificationCandidate &candidate);
Json to_json(const ClassificationReport &report);

/// Top-level report: {command, config, results, summary{max, mean, pass}}.
Json make_report(const std::string &command, Json config, Json results, double max, double mean, bool pass);

/// Pretty-printed JSON with a trailing newline. Doubles are written in the
/// shortest form that reads back to the same value.
std::string dump(const Json &j);

/// Decimal text of a double with 17 significant digits.
std::string format_double(double v);

/// Small CSV table: a header row and data rows, numbers written with
/// format_double.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(const std::vector<double> &row);
    /// Row whose first cell is text.
    void add_row(const std::string &label, const std::vector<double> &row);
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace hpq

#endif // HPQ_REPORT_HPP
