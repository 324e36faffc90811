#include "hpq/cli.hpp"
#include "hpq/sampling.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hpq {

namespace {

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        out.push_back(cur);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

double to_double(const std::string &s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw InvalidInput("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v))
        throw InvalidInput("not a finite number: '" + s + "'");
    return v;
}

int to_int(const std::string &s)
{
    const double v = to_double(s);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw InvalidInput("not an integer: '" + s + "'");
    return static_cast<int>(v);
}

std::vector<double> to_doubles(const std::string &s)
{
    std::vector<double> out;
    for (const std::string &part : split(s, ','))
        out.push_back(to_double(part));
    return out;
}

Vec to_vec(const std::vector<double> &v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

FrameStrategy parse_frame(const std::string &s)
{
    if (s == "canonical")
        return FrameStrategy::Canonical;
    if (s == "rotated")
        return FrameStrategy::Rotated;
    throw InvalidInput("unknown frame strategy '" + s + "'");
}

std::string frame_name(FrameStrategy f) { return f == FrameStrategy::Canonical ? "canonical" : "rotated"; }

OutputFormat parse_format(const std::string &s)
{
    if (s == "json")
        return OutputFormat::Json;
    if (s == "csv")
        return OutputFormat::Csv;
    throw InvalidInput("unknown output format '" + s + "'");
}

std::uint64_t parse_seed(const std::string &s)
{
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception &) {
        throw InvalidInput("invalid seed '" + s + "'");
    }
    if (used != s.size() || s.find('-') != std::string::npos)
        throw InvalidInput("invalid seed '" + s + "'");
    return v;
}

// -- commands ------------------------------------------------------------------

struct Context {
    const RunConfig &cfg;
    Manifold model;
    OperatorConfig op;

    explicit Context(const RunConfig &c) : cfg(c), model(Manifold::parse(c.model)), op(c.operator_config()) {}
};

RunResult verify(const Context &ctx)
{
    const RunConfig &cfg = ctx.cfg;
    const VectorFieldSpec sigma = parse_field(cfg.field, ctx.model);
    const ResidualReport rep = residual_report(parse_equation(cfg.equation), sigma, BundleMetricParams(cfg.p, cfg.q),
                                               ctx.model, cfg.samples, cfg.seed, ctx.op);
    const bool pass = rep.max <= cfg.tolerance;
    RunResult r;
    r.exit_code = pass ? kExitPass : kExitResidual;
    if (cfg.format == OutputFormat::Csv) {
        std::vector<std::string> header{"index"};
        for (int i = 0; i < ctx.model.coord_dim(); ++i)
            header.push_back("x" + std::to_string(i));
        header.push_back("residual");
        CsvTable t(header);
        for (std::size_t i = 0; i < rep.per_point.size(); ++i) {
            std::vector<double> row{static_cast<double>(i)};
            const Vec &c = rep.per_point[i].first.coords();
            row.insert(row.end(), c.data(), c.data() + c.size());
            row.push_back(rep.per_point[i].second);
            t.add_row(row);
        }
        r.output = t.str();
    } else {
        r.output = dump(make_report("verify", to_json(cfg), Json::array({to_json(rep, cfg.per_point)}), rep.max,
                                    rep.mean, pass));
    }
    if (!pass)
        r.diagnostics = "max residual " + format_double(rep.max) + " above tolerance " + format_double(cfg.tolerance);
    return r;
}

RunResult identities(const Context &ctx)
{
    const RunConfig &cfg = ctx.cfg;
    const Manifold sphere = Manifold::sphere(cfg.n);
    Rng rng(cfg.seed);
    IdentityReport total;
    total.n = cfg.n;
    Json results = Json::array();
    CsvTable t({"matrix", "identity", "max_residual"});
    double mean_acc = 0.0;
    for (int m = 0; m < cfg.matrices; ++m) {
        const QuadraticFormSpec b(random_symmetric(cfg.n + 1, rng));
        IdentityReport rep;
        rep.n = cfg.n;
        for (const Point &x : sample_points(sphere, cfg.samples, cfg.seed + 1 + static_cast<std::uint64_t>(m))) {
            const IdentityReport at = verify_sigma_identities(b, cfg.n, x);
            for (int i = 0; i < kIdentityCount; ++i)
                rep.residual[i] = std::max(rep.residual[i], at.residual[i]);
        }
        for (int i = 0; i < kIdentityCount; ++i) {
            total.residual[i] = std::max(total.residual[i], rep.residual[i]);
            t.add_row({static_cast<double>(m), static_cast<double>(i), rep.residual[i]});
        }
        mean_acc += rep.max();
        Json j = to_json(rep);
        j["matrix"] = m;
        results.push_back(std::move(j));
    }
    const bool pass = total.max() <= cfg.tolerance;
    RunResult r;
    r.exit_code = pass ? kExitPass : kExitResidual;
    if (cfg.format == OutputFormat::Csv)
        r.output = t.str();
    else
        r.output = dump(make_report("identities", to_json(cfg), std::move(results), total.max(),
                                    mean_acc / cfg.matrices, pass));
    if (!pass)
        r.diagnostics = "identity residual " + format_double(total.max()) + " above tolerance";
    return r;
}

RunResult classify(const Context &ctx)
{
    const RunConfig &cfg = ctx.cfg;
    const ClassificationReport rep = solve_classification(cfg.n, cfg.samples, cfg.seed);
    double max = 0.0, sum = 0.0;
    int count = 0;
    for (const auto &c : rep.candidates)
        if (c.residual_max) {
            max = std::max(max, *c.residual_max);
            sum += *c.residual_max;
            ++count;
        }
    RunResult r;
    if (cfg.format == OutputFormat::Csv) {
        CsvTable t({"source", "q", "mu_sq", "p", "k_mult", "validated", "residual_max"});
        for (const auto &c : rep.candidates)
            t.add_row(c.source, {c.q, c.mu_sq, c.p, static_cast<double>(c.k_mult), c.validated ? 1.0 : 0.0,
                                 c.residual_max.value_or(std::nan(""))});
        r.output = t.str();
    } else {
        r.output = dump(make_report("classify", to_json(cfg), Json::array({to_json(rep)}), max,
                                    count ? sum / count : 0.0, true));
    }
    for (const auto &d : rep.discrepancies)
        r.diagnostics += "discrepancy: " + d + "\n";
    return r;
}

RunResult scan(const Context &ctx)
{
    const RunConfig &cfg = ctx.cfg;
    const VectorFieldSpec sigma = parse_field(cfg.field, ctx.model);
    const Equation eq = parse_equation(cfg.equation);
    const std::vector<double> ps = cfg.p_grid.empty() ? std::vector<double>{cfg.p} : cfg.p_grid;
    const std::vector<double> qs = cfg.q_grid.empty() ? std::vector<double>{cfg.q} : cfg.q_grid;
    const std::vector<double> ks = cfg.scale_grid.empty() ? std::vector<double>{1.0} : cfg.scale_grid;
    const std::vector<Point> samples = sample_points_for(sigma, ctx.model, cfg.samples, cfg.seed);

    CsvTable t({"p", "q", "scale", "max", "mean", "below_tolerance"});
    Json cells = Json::array();
    double max = 0.0, sum = 0.0;
    std::size_t below = 0, count = 0;
    for (double p : ps)
        for (double q : qs)
            for (double k : ks) {
                const ResidualReport rep =
                    residual_report(eq, k * sigma, BundleMetricParams(p, q), samples, cfg.seed, ctx.op);
                const bool ok = rep.max <= cfg.tolerance;
                t.add_row({p, q, k, rep.max, rep.mean, ok ? 1.0 : 0.0});
                cells.push_back(
                    Json{{"p", p}, {"q", q}, {"scale", k}, {"max", rep.max}, {"mean", rep.mean}, {"below_tolerance", ok}});
                max = std::max(max, rep.max);
                sum += rep.mean;
                below += ok;
                ++count;
            }
    RunResult r;
    if (cfg.format == OutputFormat::Csv) {
        r.output = t.str();
    } else {
        Json j = make_report("scan", to_json(cfg), std::move(cells), max, sum / static_cast<double>(count), true);
        j["summary"]["cells"] = count;
        j["summary"]["cells_below_tolerance"] = below;
        r.output = dump(j);
    }
    return r;
}

RunResult tension(const Context &ctx)
{
    const RunConfig &cfg = ctx.cfg;
    const VectorFieldSpec sigma = parse_field(cfg.field, ctx.model);
    const BundleMetricParams params(cfg.p, cfg.q);
    CsvTable t({"index", "vertical_norm", "horizontal_norm", "map_vertical_residual", "gap"});
    Json pts = Json::array();
    double max_gap = 0.0, sum_gap = 0.0, max_v = 0.0, max_h = 0.0;
    const std::vector<Point> samples = sample_points_for(sigma, ctx.model, cfg.samples, cfg.seed);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Point &x = samples[i];
        const TensionValue tau = tension_field(sigma, params, x, ctx.op);
        const MapResidual m = map_residual(sigma, params, x, ctx.op);
        const double v = std::sqrt(sq_norm(x, tau.vertical)), h = std::sqrt(sq_norm(x, tau.horizontal));
        const double r7 = std::sqrt(sq_norm(x, m.vertical));
        const double gap = std::abs(v - r7);
        max_gap = std::max(max_gap, gap);
        sum_gap += gap;
        max_v = std::max(max_v, v);
        max_h = std::max(max_h, h);
        t.add_row({static_cast<double>(i), v, h, r7, gap});
        if (cfg.per_point)
            pts.push_back(Json{{"point", to_json(x.coords())},
                               {"vertical", to_json(tau.vertical)},
                               {"horizontal", to_json(tau.horizontal)},
                               {"gap", gap}});
    }
    const bool pass = max_gap <= cfg.tolerance;
    RunResult r;
    r.exit_code = pass ? kExitPass : kExitResidual;
    if (cfg.format == OutputFormat::Csv) {
        r.output = t.str();
    } else {
        Json res{{"field", sigma.describe()},
                 {"params", to_json(params)},
                 {"samples", samples.size()},
                 {"max_vertical_norm", max_v},
                 {"max_horizontal_norm", max_h},
                 {"max_gap_to_map_residual", max_gap}};
        if (cfg.per_point)
            res["per_point"] = std::move(pts);
        r.output = dump(make_report("tension", to_json(cfg), Json::array({std::move(res)}), max_gap,
                                    sum_gap / static_cast<double>(samples.size()), pass));
    }
    if (!pass)
        r.diagnostics = "vertical tension differs from the map residual by " + format_double(max_gap);
    return r;
}

RunResult energy(const Context &ctx)
{
    const RunConfig &cfg = ctx.cfg;
    const VectorFieldSpec sigma = parse_field(cfg.field, ctx.model);
    const BundleMetricParams params(cfg.p, cfg.q);
    const WeightedSamples ws = monte_carlo(ctx.model, cfg.samples, cfg.seed);
    double max = 0.0, sum = 0.0;
    CsvTable t({"index", "density", "weight"});
    for (std::size_t i = 0; i < ws.points.size(); ++i) {
        const double d = vertical_energy_density(sigma, params, ws.points[i], ctx.op);
        max = std::max(max, d);
        sum += d;
        t.add_row({static_cast<double>(i), d, ws.weights[i]});
    }
    const double e = vertical_energy(sigma, params, ws.points, ws.weights, ctx.op);
    RunResult r;
    if (cfg.format == OutputFormat::Csv) {
        r.output = t.str();
    } else {
        Json res{{"field", sigma.describe()},
                 {"params", to_json(params)},
                 {"method", "monte-carlo"},
                 {"samples", ws.points.size()},
                 {"energy", e}};
        r.output = dump(make_report("energy", to_json(cfg), Json::array({std::move(res)}), max,
                                    sum / static_cast<double>(ws.points.size()), true));
    }
    return r;
}

} // namespace

std::string to_string(Command c)
{
    switch (c) {
    case Command::Verify:
        return "verify";
    case Command::Identities:
        return "identities";
    case Command::Classify:
        return "classify";
    case Command::Scan:
        return "scan";
    case Command::Tension:
        return "tension";
    case Command::Energy:
        return "energy";
    }
    return {};
}

Command parse_command(const std::string &text)
{
    for (Command c : {Command::Verify, Command::Identities, Command::Classify, Command::Scan, Command::Tension,
                      Command::Energy})
        if (to_string(c) == text)
            return c;
    throw InvalidInput("unknown command '" + text + "'");
}

std::vector<double> parse_grid(const std::string &text)
{
    if (text.empty())
        throw InvalidInput("empty grid");
    if (text.find(':') == std::string::npos)
        return to_doubles(text);
    const auto parts = split(text, ':');
    if (parts.size() != 3)
        throw InvalidInput("range grid must be start:stop:step");
    const double a = to_double(parts[0]), b = to_double(parts[1]), h = to_double(parts[2]);
    if (!(h > 0.0) || b < a)
        throw InvalidInput("range grid needs step > 0 and stop >= start");
    const double steps = (b - a) / h;
    if (steps > 1e6)
        throw InvalidInput("range grid too large");
    const auto count = static_cast<long>(std::floor(steps + 1e-9)) + 1;
    std::vector<double> out;
    for (long i = 0; i < count; ++i)
        out.push_back(a + static_cast<double>(i) * h);
    return out;
}

VectorFieldSpec parse_field(const std::string &text, const Manifold &model)
{
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::string args = colon == std::string::npos ? std::string() : text.substr(colon + 1);
    const bool has_args = colon != std::string::npos;

    VectorFieldSpec sigma = VectorFieldSpec::zero();
    if (name == "zero") {
        sigma = VectorFieldSpec::zero();
    } else if (name == "hopf") {
        sigma = VectorFieldSpec::hopf(has_args ? to_double(args) : 1.0);
    } else if (name == "rotation") {
        Eigen::Vector3d axis(0.0, 0.0, 1.0);
        if (has_args) {
            const auto v = to_doubles(args);
            if (v.size() != 3)
                throw InvalidInput("rotation axis needs three components");
            axis = Eigen::Vector3d(v[0], v[1], v[2]);
        }
        sigma = VectorFieldSpec::rotation_s2(axis);
    } else if (name == "conformal") {
        if (!has_args)
            throw InvalidInput("conformal field needs the vector a");
        sigma = VectorFieldSpec::conformal(to_vec(to_doubles(args)));
    } else if (name == "quadratic") {
        if (!has_args)
            throw InvalidInput("quadratic field needs the diagonal of B");
        const auto at = args.find('@');
        const int k = at == std::string::npos ? 1 : to_int(args.substr(at + 1));
        const Vec d = to_vec(to_doubles(args.substr(0, at)));
        sigma = VectorFieldSpec::quadratic_gradient(QuadraticFormSpec(d.asDiagonal().toDenseMatrix()), k);
    } else if (name == "profiled") {
        const auto v = has_args ? to_doubles(args) : std::vector<double>{1.0, 0.0};
        if (v.size() != 2)
            throw InvalidInput("profiled field needs c,a for F(t) = c t^a");
        sigma = VectorFieldSpec::profiled_rotation(Profile::power(v[0], v[1]), Eigen::Vector3d(0.0, 0.0, 1.0));
    } else if (name == "frame") {
        if (!has_args)
            throw InvalidInput("frame field needs an index");
        sigma = VectorFieldSpec::frame_field(model, to_int(args));
    } else if (name == "parallel") {
        sigma = VectorFieldSpec::frame_field(model, 3);
    } else {
        throw InvalidInput("unknown field '" + text + "'");
    }
    sigma.check_compatible(model);
    return sigma;
}

void RunConfig::validate() const
{
    if (samples < 1)
        throw InvalidInput("samples must be >= 1");
    if (!(tolerance > 0.0) || !std::isfinite(tolerance))
        throw InvalidInput("tolerance must be positive");
    if (!std::isfinite(p) || !std::isfinite(q))
        throw InvalidInput("p and q must be finite");
    operator_config().validate();
    for (const auto *grid : {&p_grid, &q_grid, &scale_grid})
        for (double v : *grid)
            if (!std::isfinite(v))
                throw InvalidInput("grid values must be finite");
    if (command == Command::Identities && (n < 2 || matrices < 1))
        throw InvalidInput("identities need n >= 2 and at least one matrix");
    parse_equation(equation);
}

OperatorConfig RunConfig::operator_config() const
{
    OperatorConfig op;
    if (fd_step)
        op.fd_step = *fd_step;
    op.frame = frame;
    return op;
}

Json to_json(const RunConfig &c)
{
    Json j;
    j["command"] = to_string(c.command);
    j["model"] = c.model;
    j["field"] = c.field;
    j["p"] = c.p;
    j["q"] = c.q;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["tolerance"] = c.tolerance;
    j["format"] = c.format == OutputFormat::Json ? "json" : "csv";
    j["fd_step"] = c.fd_step ? Json(*c.fd_step) : Json(nullptr);
    j["frame"] = frame_name(c.frame);
    j["equation"] = c.equation;
    j["n"] = c.n;
    j["matrices"] = c.matrices;
    // unset grids are null; an empty array is rejected on the way back in
    auto grid_json = [](const std::vector<double> &g) { return g.empty() ? Json(nullptr) : Json(g); };
    j["p_grid"] = grid_json(c.p_grid);
    j["q_grid"] = grid_json(c.q_grid);
    j["scale"] = grid_json(c.scale_grid);
    j["per_point"] = c.per_point;
    return j;
}

RunConfig config_from_json(const Json &j, RunConfig c)
{
    if (!j.is_object())
        throw InvalidInput("config file must hold a JSON object");
    auto grid = [](const Json &v) {
        if (v.is_null())
            return std::vector<double>{};
        if (v.is_string())
            return parse_grid(v.get<std::string>());
        auto g = v.get<std::vector<double>>();
        if (g.empty())
            throw InvalidInput("empty grid");
        return g;
    };
    try {
        for (const auto &[key, v] : j.items()) {
            if (key == "command")
                c.command = parse_command(v.get<std::string>());
            else if (key == "model")
                c.model = v.get<std::string>();
            else if (key == "field")
                c.field = v.get<std::string>();
            else if (key == "p")
                c.p = v.get<double>();
            else if (key == "q")
                c.q = v.get<double>();
            else if (key == "samples")
                c.samples = v.get<int>();
            else if (key == "seed")
                c.seed = v.get<std::uint64_t>();
            else if (key == "tolerance")
                c.tolerance = v.get<double>();
            else if (key == "format")
                c.format = parse_format(v.get<std::string>());
            else if (key == "fd_step")
                c.fd_step = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
            else if (key == "frame")
                c.frame = parse_frame(v.get<std::string>());
            else if (key == "equation")
                c.equation = v.get<std::string>();
            else if (key == "n")
                c.n = v.get<int>();
            else if (key == "matrices")
                c.matrices = v.get<int>();
            else if (key == "p_grid")
                c.p_grid = grid(v);
            else if (key == "q_grid")
                c.q_grid = grid(v);
            else if (key == "scale")
                c.scale_grid = grid(v);
            else if (key == "per_point")
                c.per_point = v.get<bool>();
            else if (key == "out")
                c.out = v.get<std::string>();
            else
                throw InvalidInput("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception &e) {
        throw InvalidInput(std::string("config: ") + e.what());
    }
    return c;
}

RunResult run(const RunConfig &config)
{
    try {
        config.validate();
        const Context ctx(config);
        switch (config.command) {
        case Command::Verify:
            return verify(ctx);
        case Command::Identities:
            return identities(ctx);
        case Command::Classify:
            return classify(ctx);
        case Command::Scan:
            return scan(ctx);
        case Command::Tension:
            return tension(ctx);
        case Command::Energy:
            return energy(ctx);
        }
        throw InvalidInput("unknown command");
    } catch (const std::invalid_argument &e) {
        return {kExitInvalid, "", std::string("invalid input: ") + e.what()};
    } catch (const std::domain_error &e) {
        return {kExitDomain, "", std::string("domain error: ") + e.what()};
    }
}

int main_entry(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Residuals of harmonic-section and harmonic-map equations for vector fields on model manifolds"};
    app.name("hpq");

    std::string command, model, field, format, frame, equation, config_path, out_path, p_grid, q_grid, scale;
    double p = 0, q = 0, tolerance = 0, fd_step = 0;
    int samples = 0, n = 0, matrices = 0;
    std::string seed;
    bool per_point = false;

    app.add_option("command", command, "verify | identities | classify | scan | tension | energy");
    auto *o_model = app.add_option("--model", model, "sphere:<n>, heisenberg, sl2r or s2xr");
    auto *o_field = app.add_option("--field", field, "field descriptor, e.g. hopf:1, rotation, conformal:1,0,0,0");
    auto *o_p = app.add_option("--p", p, "metric parameter p");
    auto *o_q = app.add_option("--q", q, "metric parameter q");
    auto *o_samples = app.add_option("--samples", samples, "number of sample points (default 200)");
    auto *o_seed = app.add_option("--seed", seed, "RNG seed (default 42, or HPQ_SEED)");
    auto *o_tol = app.add_option("--tolerance", tolerance, "pass threshold (default 1e-8)");
    auto *o_format = app.add_option("--format", format, "json or csv");
    auto *o_fd = app.add_option("--fd-step", fd_step, "finite-difference step");
    auto *o_frame = app.add_option("--frame", frame, "canonical or rotated");
    auto *o_eq = app.add_option("--equation", equation, "section, killing, map, map-horizontal, map-vertical");
    auto *o_n = app.add_option("--n", n, "sphere dimension for classify / identities");
    auto *o_mat = app.add_option("--matrices", matrices, "random matrices for identities (default 20)");
    auto *o_pg = app.add_option("--p-grid", p_grid, "p values: a,b,c or start:stop:step");
    auto *o_qg = app.add_option("--q-grid", q_grid, "q values: a,b,c or start:stop:step");
    auto *o_scale = app.add_option("--scale", scale, "field scales: a,b,c or start:stop:step");
    auto *o_pp = app.add_flag("--per-point", per_point, "include per-point values in JSON");
    auto *o_config = app.add_option("--config", config_path, "JSON file with the same keys as the flags");
    auto *o_out = app.add_option("--out", out_path, "write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitPass;
        }
        err << "invalid arguments: " << e.what() << "\n";
        return kExitInvalid;
    }

    RunConfig cfg;
    bool have_command = false;
    try {
        if (const char *env = std::getenv("HPQ_SEED"); env && *env)
            cfg.seed = parse_seed(env);
        if (o_config->count()) {
            std::ifstream in(config_path);
            if (!in)
                throw InvalidInput("cannot read config file " + config_path);
            Json j;
            try {
                j = Json::parse(in);
            } catch (const nlohmann::json::exception &e) {
                throw InvalidInput(std::string("config file is not valid JSON: ") + e.what());
            }
            have_command = j.is_object() && j.contains("command");
            cfg = config_from_json(j, cfg);
        }
        if (!command.empty()) {
            cfg.command = parse_command(command);
            have_command = true;
        }
        if (!have_command)
            throw InvalidInput("no command given");
        if (o_model->count())
            cfg.model = model;
        if (o_field->count())
            cfg.field = field;
        if (o_p->count())
            cfg.p = p;
        if (o_q->count())
            cfg.q = q;
        if (o_samples->count())
            cfg.samples = samples;
        if (o_seed->count())
            cfg.seed = parse_seed(seed);
        if (o_tol->count())
            cfg.tolerance = tolerance;
        if (o_format->count())
            cfg.format = parse_format(format);
        if (o_fd->count())
            cfg.fd_step = fd_step;
        if (o_frame->count())
            cfg.frame = parse_frame(frame);
        if (o_eq->count())
            cfg.equation = equation;
        if (o_n->count())
            cfg.n = n;
        if (o_mat->count())
            cfg.matrices = matrices;
        if (o_pg->count())
            cfg.p_grid = parse_grid(p_grid);
        if (o_qg->count())
            cfg.q_grid = parse_grid(q_grid);
        if (o_scale->count())
            cfg.scale_grid = parse_grid(scale);
        if (o_pp->count())
            cfg.per_point = per_point;
        if (o_out->count())
            cfg.out = out_path;
    } catch (const InvalidInput &e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    }

    const RunResult r = run(cfg);
    if (!r.diagnostics.empty())
        err << r.diagnostics << (r.diagnostics.back() == '\n' ? "" : "\n");
    if (cfg.out) {
        std::ofstream f(*cfg.out);
        if (!f) {
            err << "invalid input: cannot write " << *cfg.out << "\n";
            return kExitInvalid;
        }
        f << r.output;
    } else {
        out << r.output;
    }
    return r.exit_code;
}

} // namespace hpq
