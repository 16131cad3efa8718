#include "cli.hpp"

#include <nonlocal_evolve/parallel.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

namespace nlevolve::cli {

using nlohmann::json;

namespace {

CliConfig preset(int example)
{
    CliConfig c;
    c.example = example;
    if (example == 0)
        return c;
    SectorOptions const s = reproduction_sector();
    c.phi = s.phi;
    c.margin = s.margin;
    c.rho1_fraction = s.rho1_fraction;
    c.initial = "example";
    c.smoothness = 1.0;
    switch (example)
    {
    case 1:
        c.alphas = {0.5, 0.3};
        c.times = {0.2, 0.4};
        break;
    case 2:
        c.op = "green";
        c.n = 32;
        c.alphas = {1.0};
        c.times = {0.5};
        c.initial = "x_log_x";
        c.smoothness = 0.45;
        break;
    case 3:
        c.alphas = {0.5};
        c.times = {0.2};
        c.source = "example";
        break;
    default:
        throw Error(ErrorKind::InvalidArgument, "example must be 0, 1, 2 or 3");
    }
    return c;
}

template <typename T>
T get(const json& j, const char* key)
{
    try
    {
        return j.get<T>();
    }
    catch (const json::exception&)
    {
        throw Error(ErrorKind::InvalidArgument, std::string("config key '") + key + "' has the wrong type");
    }
}

double lambda_min(const CliConfig& cfg)
{
    if (cfg.op == "fd")
        return FdLaplacianModel::lambda_min(cfg.n);
    if (cfg.op == "spectral" || cfg.op == "green")
        return SpectralModeModel::eigenvalue(1);
    throw Error(ErrorKind::InvalidArgument, "operator must be spectral, fd or green");
}

SectorOptions sector_of(const CliConfig& cfg)
{
    SectorOptions s;
    s.phi = cfg.phi;
    s.margin = cfg.margin;
    s.rho1_fraction = cfg.rho1_fraction;
    double const lmin = lambda_min(cfg);
    if (cfg.rho0)
    {
        if (!(*cfg.rho0 > 0 && *cfg.rho0 <= lmin))
            throw Error(ErrorKind::InvalidArgument,
                        "rho0 must lie in (0, lambda_min] for the chosen operator");
        s.margin = *cfg.rho0 / lmin;
    }
    if (cfg.rho1)
        s.rho1_fraction = *cfg.rho1 / (s.margin * lmin);
    return s;
}

std::function<double(double)> initial_function(const CliConfig& cfg)
{
    if (cfg.initial == "sin")
        return [](double x) { return std::sin(kPi * x); };
    if (cfg.initial == "x_log_x")
        return [](double x) { return x > 0 ? x * std::log(x) : 0.0; };
    if (cfg.initial == "example")
    {
        double amp = 0;
        if (cfg.example == 1)
            amp = symbol_B(NonlocalSpec{{0.5, 0.3}, {0.2, 0.4}, 1.0}, kPi * kPi).real();
        else if (cfg.example == 3)
            amp = 1 + 0.5 * std::exp(0.2);
        else if (cfg.example == 2)
            return [](double x) { return x > 0 ? x * std::log(x) : 0.0; };
        else
            throw Error(ErrorKind::InvalidArgument, "initial 'example' needs example 1, 2 or 3");
        return [amp](double x) { return amp * std::sin(kPi * x); };
    }
    throw Error(ErrorKind::InvalidArgument, "initial must be sin, x_log_x or example");
}

bool matches_preset(const CliConfig& cfg)
{
    if (cfg.example == 0)
        return false;
    CliConfig const p = preset(cfg.example);
    return cfg.initial == p.initial && cfg.source == p.source && cfg.alphas == p.alphas
           && cfg.times == p.times && cfg.horizon == p.horizon;
}

void print_plain(std::ostream& out, const char* key, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    out << key << ": " << buf << '\n';
}

}  // namespace

CliConfig parse_config(const std::string& json_text)
{
    json j;
    try
    {
        j = json::parse(json_text);
    }
    catch (const json::exception& e)
    {
        throw Error(ErrorKind::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw Error(ErrorKind::InvalidArgument, "config must be a JSON object");

    static const std::set<std::string> known = {
        "example", "operator", "n",          "phi",    "rho0",   "rho1",    "margin",
        "rho1_fraction", "alphas", "times", "horizon", "initial", "source", "smoothness",
        "N",       "N_list",   "x",          "t",      "mode",   "c1",      "force",
        "output",  "format"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw Error(ErrorKind::InvalidArgument, "unknown config key '" + it.key() + "'");

    CliConfig c = preset(j.contains("example") ? get<int>(j["example"], "example") : 0);
    auto set = [&](const char* key, auto& field) {
        if (j.contains(key))
            field = get<std::decay_t<decltype(field)>>(j[key], key);
    };
    set("operator", c.op);
    set("n", c.n);
    set("phi", c.phi);
    if (j.contains("rho0"))
        c.rho0 = get<double>(j["rho0"], "rho0");
    if (j.contains("rho1"))
        c.rho1 = get<double>(j["rho1"], "rho1");
    set("margin", c.margin);
    set("rho1_fraction", c.rho1_fraction);
    set("alphas", c.alphas);
    set("times", c.times);
    set("horizon", c.horizon);
    set("initial", c.initial);
    set("source", c.source);
    set("smoothness", c.smoothness);
    set("N", c.N);
    set("N_list", c.N_list);
    if (j.contains("x"))
    {
        if (j["x"].is_array())
            c.x = get<std::vector<double>>(j["x"], "x");
        else
            c.x = {get<double>(j["x"], "x")};
    }
    set("t", c.t);
    set("mode", c.mode);
    set("c1", c.c1);
    set("force", c.force);
    set("output", c.output);
    set("format", c.format);
    return c;
}

SpectralCharacteristics build_characteristics(const CliConfig& cfg)
{
    return self_adjoint_characteristics(lambda_min(cfg), sector_of(cfg));
}

PlanOptions build_plan_options(const CliConfig& cfg)
{
    PlanOptions o;
    if (cfg.mode == "uniform")
        o.rule = StepRule::Uniform;
    else if (cfg.mode == "fixed-t")
        o.rule = StepRule::FixedT;
    else if (cfg.mode == "inverse-sqrt-n")
        o.rule = StepRule::InverseSqrtN;
    else
        throw Error(ErrorKind::InvalidArgument, "mode must be uniform, fixed-t or inverse-sqrt-n");
    o.smoothness = cfg.smoothness;
    o.c1 = cfg.c1;
    o.force = cfg.force;
    return o;
}

Problem build_problem(const CliConfig& cfg)
{
    if (cfg.n == 0)
        throw Error(ErrorKind::InvalidArgument, "n must be positive");
    SectorOptions const sector = sector_of(cfg);

    Problem p;
    p.name = cfg.example != 0 ? "example-" + std::to_string(cfg.example) : "custom";
    std::shared_ptr<DirichletModel> model;
    if (cfg.op == "spectral")
        model = std::make_shared<SpectralModeModel>(cfg.n, sector);
    else if (cfg.op == "fd")
        model = std::make_shared<FdLaplacianModel>(cfg.n, sector);
    else if (cfg.op == "green")
        model = std::make_shared<GreenFunctionModel>(cfg.n, sector);
    else
        throw Error(ErrorKind::InvalidArgument, "operator must be spectral, fd or green");

    p.nonlocal = NonlocalSpec{cfg.alphas, cfg.times, cfg.horizon};
    p.nonlocal.validate();
    p.u0 = model->project(initial_function(cfg));
    p.smoothness = cfg.smoothness;

    if (cfg.source != "none")
    {
        double scale = 0;
        double rate = 0;
        if (cfg.source == "example")
        {
            scale = 1 + kPi * kPi;
            rate = 1;
        }
        else if (cfg.source == "decay")
        {
            scale = 1;
            rate = -1;
        }
        else
            throw Error(ErrorKind::InvalidArgument, "source must be none, example or decay");
        CVector const shape = model->project([](double x) { return std::sin(kPi * x); });
        SourceTerm f;
        f.eval = [shape, scale, rate](double t) {
            CVector v = shape;
            for (auto& c : v)
                c *= scale * std::exp(rate * t);
            return v;
        };
        p.source = std::move(f);
    }

    if (matches_preset(cfg) && cfg.example != 2)
        p.exact = make_example(cfg.example).exact;
    p.model = std::move(model);
    return p;
}

//---------------------------------------------------------------------------//
// Commands
//---------------------------------------------------------------------------//

namespace {

struct Flags {
    std::string config;
    std::optional<int> example;
    std::optional<int> N;
    std::optional<double> t;
    std::vector<double> x;
    std::optional<std::string> mode;
    std::optional<double> c1;
    bool paper_h = false;
    std::optional<double> rho1;
    std::optional<double> alpha;
    bool force = false;
    bool json = false;
    std::optional<unsigned> threads;
    std::optional<std::string> output;
    std::optional<std::string> format;
};

void add_common(CLI::App& app, Flags& f)
{
    app.add_option("--config", f.config, "JSON config file");
    app.add_option("--example", f.example, "preset problem 1, 2 or 3");
    app.add_option("--N", f.N, "quadrature half-size N");
    app.add_option("--t", f.t, "evaluation time");
    app.add_option("--mode", f.mode, "step rule: uniform or fixed-t")
        ->check(CLI::IsMember({"uniform", "fixed-t"}));
    app.add_option("--c1", f.c1, "constant of the fixed-t step h = c1 ln N / N");
    app.add_flag("--h-exact-paper", f.paper_h, "use h = N^(-1/2)");
    app.add_option("--rho1", f.rho1, "real semi-axis bound rho1 of the integration contour");
    app.add_option("--alpha", f.alpha, "smoothness exponent of u0");
    app.add_flag("--force", f.force, "solve even when solvability is unknown");
    app.add_flag("--json", f.json, "machine-readable output");
    app.add_option("--threads", f.threads, "worker threads (default $NONLOCAL_EVOLVE_THREADS or 1)");
}

CliConfig load(const Flags& f)
{
    CliConfig cfg;
    if (!f.config.empty())
    {
        std::ifstream in(f.config);
        if (!in)
            throw Error(ErrorKind::Io, "cannot read config '" + f.config + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        cfg = parse_config(buf.str());
        if (f.example && *f.example != cfg.example)
            throw Error(ErrorKind::InvalidArgument, "--example conflicts with the config file");
    }
    else if (f.example)
        cfg = preset(*f.example);
    else
        throw Error(ErrorKind::InvalidArgument, "give --config or --example");

    if (f.N)
        cfg.N = *f.N;
    if (f.t)
        cfg.t = *f.t;
    if (!f.x.empty())
        cfg.x = f.x;
    if (f.mode)
        cfg.mode = *f.mode;
    if (f.paper_h)
        cfg.mode = "inverse-sqrt-n";
    if (f.c1)
        cfg.c1 = *f.c1;
    if (f.rho1)
        cfg.rho1 = *f.rho1;
    if (f.alpha)
        cfg.smoothness = *f.alpha;
    if (f.force)
        cfg.force = true;
    if (f.output)
        cfg.output = *f.output;
    if (f.format)
        cfg.format = *f.format;
    return cfg;
}

ReportFormat format_of(const std::string& s)
{
    if (s == "csv")
        return ReportFormat::Csv;
    if (s == "jsonl")
        return ReportFormat::JsonLines;
    throw Error(ErrorKind::InvalidArgument, "format must be csv or jsonl");
}

int cmd_check(const Flags& f, std::ostream& out)
{
    CliConfig const cfg = load(f);
    SpectralCharacteristics const spec = build_characteristics(cfg);
    NonlocalSpec const nl{cfg.alphas, cfg.times, cfg.horizon};
    nl.validate();
    Solvability const verdict = check_solvability(nl, spec);

    std::optional<double> Q;
    std::string q_note;
    if (verdict != Solvability::Unknown)
    {
        try
        {
            Q = q_bound(nl, spec);
        }
        catch (const Error& e)
        {
            q_note = e.what();
        }
    }
    double const d1 = strip_height(spec);
    Hyperbola const h = integration_hyperbola(spec);

    if (f.json)
    {
        json j{{"verdict", std::string(to_string(verdict))},
               {"Q", Q ? json(*Q) : json(nullptr)},
               {"d1", d1},
               {"a_I", h.a},
               {"b_I", h.b}};
        if (!q_note.empty())
            j["Q_error"] = q_note;
        out << j.dump() << '\n';
    }
    else
    {
        out << "verdict: " << to_string(verdict) << '\n';
        if (Q)
            print_plain(out, "Q", *Q);
        else
            out << "Q: n/a" << (q_note.empty() ? "" : " (" + q_note + ")") << '\n';
        print_plain(out, "d1", d1);
        print_plain(out, "a_I", h.a);
        print_plain(out, "b_I", h.b);
    }
    if (verdict == Solvability::Unknown)
        return kUnknownSolvability;
    return Q ? kOk : kError;
}

int cmd_solve(const Flags& f, std::ostream& out)
{
    CliConfig const cfg = load(f);
    Problem const problem = build_problem(cfg);
    unsigned const threads = resolve_threads(f.threads);
    SincPlan const plan = make_plan(problem.model->spectral(), problem.nonlocal, cfg.N,
                                    build_plan_options(cfg));
    SourceTerm const* src = problem.source ? &*problem.source : nullptr;
    CVector const u = solve_full(plan, *problem.model, problem.u0, src, cfg.t, threads);

    json points = json::array();
    for (double x : cfg.x)
    {
        if (!(x >= 0 && x <= 1))
            throw Error(ErrorKind::InvalidArgument, "evaluation points must lie in [0, 1]");
        Complex const v = problem.model->evaluate(u, x);
        json p{{"x", x}, {"value_re", v.real()}, {"value_im", v.imag()}};
        if (problem.exact)
            p["error"] = std::abs(v.real() - problem.exact(x, cfg.t));
        points.push_back(std::move(p));
    }

    if (f.json)
    {
        out << json{{"N", plan.N},
                    {"h", plan.h},
                    {"t", cfg.t},
                    {"verdict", std::string(to_string(plan.verdict))},
                    {"points", points}}
                   .dump()
            << '\n';
        return kOk;
    }
    char buf[128];
    for (auto const& p : points)
    {
        std::snprintf(buf, sizeof buf, "%.16e %.16e", p["x"].get<double>(),
                      p["value_re"].get<double>());
        out << buf;
        if (p.contains("error"))
        {
            std::snprintf(buf, sizeof buf, " %.16e", p["error"].get<double>());
            out << buf;
        }
        out << '\n';
    }
    return kOk;
}

void emit_report(const ConvergenceReport& report, const CliConfig& cfg, std::ostream& out)
{
    ReportFormat const fmt = format_of(cfg.format);
    if (cfg.output.empty() || cfg.output == "-")
        write_report(report, fmt, out);
    else
        write_report(report, fmt, cfg.output);
}

int cmd_study(const Flags& f, std::ostream& out)
{
    CliConfig const cfg = load(f);
    Problem const problem = build_problem(cfg);
    if (check_solvability(problem.nonlocal, problem.model->spectral()) == Solvability::Unknown
        && !cfg.force)
        throw Error(ErrorKind::Unsolvable, "neither solvability condition holds (use --force)");

    StudyConfig study;
    study.example_id = cfg.example;
    study.N_list = cfg.N_list;
    study.x = cfg.x.empty() ? 0.5 : cfg.x.front();
    study.t = cfg.t;
    study.plan = build_plan_options(cfg);
    study.threads = resolve_threads(f.threads);
    emit_report(run_study(study, problem), cfg, out);
    return kOk;
}

int cmd_reproduce(const Flags& f, std::ostream& out)
{
    if (!f.example)
        throw Error(ErrorKind::InvalidArgument, "reproduce needs --example 1, 2 or 3");
    StudyConfig cfg = reproduction_config(*f.example);
    cfg.threads = resolve_threads(f.threads);
    ConvergenceReport const report = run_study(cfg, make_example(*f.example));

    CliConfig io;
    io.output = f.output.value_or("");
    io.format = f.format.value_or("csv");
    emit_report(report, io, out);

    bool all = true;
    for (auto const& c : check_reproduction(*f.example, report))
    {
        all = all && c.pass;
        out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    }
    return all ? kOk : kError;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sinc quadrature solver for nonlocal evolution problems"};
    app.require_subcommand(1);

    Flags flags;
    auto* check = app.add_subcommand("check", "solvability pre-flight");
    auto* solve = app.add_subcommand("solve", "solve at one N and print u(x, t)");
    auto* study = app.add_subcommand("study", "convergence study over N_list");
    auto* repro = app.add_subcommand("reproduce", "rerun a reference convergence study");
    for (auto* sub : {check, solve, study})
        add_common(*sub, flags);
    solve->add_option("--x", flags.x, "evaluation points");
    for (auto* sub : {study, repro})
    {
        sub->add_option("--output", flags.output, "report path (default stdout)");
        sub->add_option("--format", flags.format, "csv or jsonl")
            ->check(CLI::IsMember({"csv", "jsonl"}));
    }
    repro->add_option("--example", flags.example, "1, 2 or 3")->required();
    repro->add_option("--threads", flags.threads, "worker threads");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        return app.exit(e, out, err) == 0 ? kOk : kError;
    }

    try
    {
        if (*check)
            return cmd_check(flags, out);
        if (*solve)
            return cmd_solve(flags, out);
        if (*study)
            return cmd_study(flags, out);
        return cmd_reproduce(flags, out);
    }
    catch (const Error& e)
    {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return e.kind() == ErrorKind::Unsolvable ? kUnknownSolvability : kError;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << '\n';
        return kError;
    }
}

}  // namespace nlevolve::cli
