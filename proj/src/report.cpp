#include "hpq/report.hpp"

#include <cstdio>
#include <sstream>

namespace hpq {

Json to_json(const Vec &v)
{
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back(v[i]);
    return arr;
}

Json to_json(const BundleMetricParams &params)
{
    return Json{{"p", params.p()}, {"q", params.q()}, {"only_near_zero_section", params.only_near_zero_section()}};
}

Json to_json(const ResidualReport &report, bool per_point)
{
    Json j;
    j["equation"] = to_string(report.equation);
    j["field"] = report.field;
    j["params"] = to_json(report.params);
    j["seed"] = report.seed;
    j["samples"] = report.per_point.size();
    j["max"] = report.max;
    j["mean"] = report.mean;
    if (per_point) {
        Json pts = Json::array();
        for (const auto &[x, r] : report.per_point)
            pts.push_back(Json{{"point", to_json(x.coords())}, {"residual", r}});
        j["per_point"] = std::move(pts);
    }
    return j;
}

Json to_json(const IdentityReport &report)
{
    Json j;
    j["n"] = report.n;
    Json ids = Json::object();
    for (int i = 0; i < kIdentityCount; ++i)
        ids[identity_names()[i]] = report.residual[i];
    j["identities"] = std::move(ids);
    j["max"] = report.max();
    return j;
}

Json to_json(const ClassificationCandidate &c)
{
    Json j;
    j["source"] = c.source;
    j["n"] = c.n;
    j["p"] = c.p;
    j["q"] = c.q;
    j["k_mult"] = c.k_mult;
    j["mu_sq"] = c.mu_sq;
    j["mu_sq_positive"] = c.mu_sq > 0.0;
    if (c.B) {
        Json diag = Json::array();
        for (Eigen::Index i = 0; i < c.B->size(); ++i)
            diag.push_back(c.B->matrix()(i, i));
        j["B_diagonal"] = std::move(diag);
    } else {
        j["B_diagonal"] = nullptr;
    }
    j["validated"] = c.validated;
    j["residual_max"] = c.residual_max ? Json(*c.residual_max) : Json(nullptr);
    return j;
}

Json to_json(const ClassificationReport &report)
{
    Json j;
    j["n"] = report.n;
    j["p"] = report.p;
    j["k_from_t3"] = report.k_real;
    j["k_mult"] = report.k_mult;
    j["q_zero_rejected"] = report.q_zero_rejected;
    Json roots = Json::array();
    for (const PrintedRoot &r : report.printed_roots)
        roots.push_back(Json{{"q", r.q},
                             {"mu_sq_printed", r.mu_sq_printed},
                             {"mu_sq_printed_sign", r.mu_sq_printed > 0.0 ? "positive" : "non-positive"},
                             {"mu_sq_from_coefficients", r.mu_sq_system},
                             {"printed_relation_value", r.printed_system}});
    j["printed_quadratic_roots"] = std::move(roots);
    Json cands = Json::array();
    for (const auto &c : report.candidates)
        cands.push_back(to_json(c));
    j["candidates"] = std::move(cands);
    j["discrepancies"] = report.discrepancies;
    j["validation_samples"] = report.validation_samples;
    j["seed"] = report.seed;
    return j;
}

Json make_report(const std::string &command, Json config, Json results, double max, double mean, bool pass)
{
    Json j;
    j["command"] = command;
    j["config"] = std::move(config);
    j["results"] = std::move(results);
    j["summary"] = Json{{"max", max}, {"mean", mean}, {"pass", pass}};
    return j;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header))
{
    if (header_.empty())
        throw InvalidInput("CSV table needs at least one column");
}

void CsvTable::add_row(const std::vector<double> &row)
{
    if (row.size() != header_.size())
        throw InvalidInput("CSV row width does not match the header");
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (double v : row)
        cells.push_back(format_double(v));
    rows_.push_back(std::move(cells));
}

void CsvTable::add_row(const std::string &label, const std::vector<double> &row)
{
    if (row.size() + 1 != header_.size())
        throw InvalidInput("CSV row width does not match the header");
    if (label.find_first_of(",\"\n") != std::string::npos)
        throw InvalidInput("CSV label needs quoting: " + label);
    std::vector<std::string> cells{label};
    for (double v : row)
        cells.push_back(format_double(v));
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < header_.size(); ++i)
        os << (i ? "," : "") << header_[i];
    os << '\n';
    for (const auto &row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << row[i];
        os << '\n';
    }
    return os.str();
}

} // namespace hpq
