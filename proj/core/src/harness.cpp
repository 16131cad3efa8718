#include "nonlocal_evolve/harness.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace nlevolve {

using nlohmann::json;

void StudyConfig::validate() const
{
    if (example_id < 0 || example_id > 3)
        throw Error(ErrorKind::InvalidArgument, "example_id must be 0, 1, 2 or 3");
    if (N_list.empty())
        throw Error(ErrorKind::InvalidArgument, "N_list is empty");
    int const min_N = plan.rule == StepRule::FixedT ? 2 : 1;
    for (std::size_t i = 0; i < N_list.size(); ++i)
    {
        if (N_list[i] < min_N)
            throw Error(ErrorKind::InvalidArgument,
                        "N_list entries must be >= " + std::to_string(min_N));
        if (i > 0 && N_list[i] <= N_list[i - 1])
            throw Error(ErrorKind::InvalidArgument, "N_list must be strictly increasing");
    }
    if (!(x > 0 && x < 1))
        throw Error(ErrorKind::InvalidArgument, "x must lie in (0, 1)");
    if (!(t >= 0) || !std::isfinite(t))
        throw Error(ErrorKind::InvalidArgument, "t must be finite and non-negative");
}

bool at_precision_floor(double error, double value)
{
    return error <= 100 * std::numeric_limits<double>::epsilon() * std::abs(value);
}

double solve_point(const Problem& problem, int N, double x, double t,
                   const PlanOptions& plan_opts, unsigned threads)
{
    if (!problem.model)
        throw Error(ErrorKind::InvalidArgument, "problem has no operator model");
    PlanOptions opts = plan_opts;
    opts.smoothness = problem.smoothness;
    SincPlan const plan = make_plan(problem.model->spectral(), problem.nonlocal, N, opts);
    SourceTerm const* f = problem.source ? &*problem.source : nullptr;
    CVector const u = solve_full(plan, *problem.model, problem.u0, f, t, threads);
    Complex const v = problem.model->evaluate(u, x);
    if (std::abs(v.imag()) > 1e-10 * (1 + std::abs(v.real())))
        throw Error(ErrorKind::InvalidArgument, "solution has a non-negligible imaginary part");
    return v.real();
}

namespace {

json metadata_of(const StudyConfig& cfg, const Problem& problem)
{
    // The thread count is deliberately absent: reports must not depend on it.
    return json{{"example_id", cfg.example_id},
                {"problem", problem.name},
                {"N_list", cfg.N_list},
                {"x", cfg.x},
                {"t", cfg.t},
                {"rule", std::string(to_string(cfg.plan.rule))},
                {"smoothness", problem.smoothness},
                {"c1", cfg.plan.c1},
                {"force", cfg.plan.force}};
}

}  // namespace

ConvergenceReport run_study(const StudyConfig& cfg, const Problem& problem)
{
    cfg.validate();
    ConvergenceReport report;
    report.metadata = metadata_of(cfg, problem).dump();

    for (int N : cfg.N_list)
    {
        ReportRow row;
        row.N = N;
        try
        {
            row.value = solve_point(problem, N, cfg.x, cfg.t, cfg.plan, cfg.threads);
            if (problem.exact)
            {
                row.error = std::abs(row.value - problem.exact(cfg.x, cfg.t));
                row.floor_flag = at_precision_floor(*row.error, row.value);
            }
        }
        catch (const Error& e)
        {
            row.value = std::numeric_limits<double>::quiet_NaN();
            row.failure = e.what();
        }
        report.rows.push_back(std::move(row));
    }

    for (std::size_t i = 0; i + 1 < report.rows.size(); ++i)
    {
        ReportRow& a = report.rows[i];
        ReportRow const& b = report.rows[i + 1];
        if (!a.failure.empty() || !b.failure.empty() || !a.error || !b.error)
            continue;
        ErrorSample const pair[2] = {{a.N, *a.error, std::abs(a.value)},
                                     {b.N, *b.error, std::abs(b.value)}};
        auto const rates = estimate_rate_constants(pair);
        if (!rates.empty() && rates[0].valid)
            a.rate_c = rates[0].c;
    }
    return report;
}

//---------------------------------------------------------------------------//
// Serialization
//---------------------------------------------------------------------------//

namespace {

constexpr const char* kCsvHeader = "N,value_re,error,rate_c,floor_flag";

std::string fmt(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line)
    {
        if (c == ',')
        {
            out.push_back(cur);
            cur.clear();
        }
        else if (c != '\r')
            cur.push_back(c);
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s)
{
    if (s == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    char* end = nullptr;
    double const v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0')
        throw Error(ErrorKind::Io, "malformed number '" + s + "' in report");
    return v;
}

json number_or_null(const std::optional<double>& v)
{
    return v && std::isfinite(*v) ? json(*v) : json(nullptr);
}

}  // namespace

void write_report(const ConvergenceReport& report, ReportFormat format, std::ostream& out)
{
    if (format == ReportFormat::Csv)
    {
        out << kCsvHeader << '\n';
        for (auto const& r : report.rows)
        {
            out << r.N << ',' << fmt(r.value) << ',' << (r.error ? fmt(*r.error) : "") << ','
                << (r.rate_c ? fmt(*r.rate_c) : "") << ',' << (r.floor_flag ? 1 : 0) << '\n';
        }
        return;
    }

    json meta = json::parse(report.metadata.empty() ? "{}" : report.metadata);
    out << json{{"metadata", meta}}.dump() << '\n';
    for (auto const& r : report.rows)
    {
        json j{{"N", r.N},
               {"value_re", std::isfinite(r.value) ? json(r.value) : json(nullptr)},
               {"error", number_or_null(r.error)},
               {"rate_c", number_or_null(r.rate_c)},
               {"floor_flag", r.floor_flag}};
        if (!r.failure.empty())
            j["failure"] = r.failure;
        out << j.dump() << '\n';
    }
}

void write_report(const ConvergenceReport& report, ReportFormat format, const std::string& path)
{
    std::ostringstream buf;
    write_report(report, format, buf);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
    out << buf.str();
    out.flush();
    if (!out)
        throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

ConvergenceReport parse_report(std::istream& in, ReportFormat format)
{
    ConvergenceReport report;
    std::string line;
    if (format == ReportFormat::Csv)
    {
        if (!std::getline(in, line) || split_csv(line) != split_csv(kCsvHeader))
            throw Error(ErrorKind::Io, "report does not start with the expected header");
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            auto const f = split_csv(line);
            if (f.size() != 5)
                throw Error(ErrorKind::Io, "report row has " + std::to_string(f.size()) + " fields");
            ReportRow r;
            r.N = std::stoi(f[0]);
            r.value = parse_double(f[1]);
            if (!f[2].empty())
                r.error = parse_double(f[2]);
            if (!f[3].empty())
                r.rate_c = parse_double(f[3]);
            r.floor_flag = f[4] == "1";
            report.rows.push_back(std::move(r));
        }
        return report;
    }

    bool first = true;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        json j;
        try
        {
            j = json::parse(line);
        }
        catch (const json::exception& e)
        {
            throw Error(ErrorKind::Io, std::string("malformed report line: ") + e.what());
        }
        if (first)
        {
            first = false;
            if (j.contains("metadata"))
            {
                report.metadata = j["metadata"].dump();
                continue;
            }
        }
        ReportRow r;
        r.N = j.at("N").get<int>();
        r.value = j.at("value_re").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                             : j["value_re"].get<double>();
        if (!j.at("error").is_null())
            r.error = j["error"].get<double>();
        if (!j.at("rate_c").is_null())
            r.rate_c = j["rate_c"].get<double>();
        r.floor_flag = j.at("floor_flag").get<bool>();
        if (j.contains("failure"))
            r.failure = j["failure"].get<std::string>();
        report.rows.push_back(std::move(r));
    }
    return report;
}

//---------------------------------------------------------------------------//
// Reproduction
//---------------------------------------------------------------------------//

namespace {

constexpr double kExample2Target = -1.92907820e-2;

const ReportRow* find_row(const ConvergenceReport& report, int N)
{
    for (auto const& r : report.rows)
        if (r.N == N && r.failure.empty())
            return &r;
    return nullptr;
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

template <std::size_t K>
void error_ratio_checks(const ConvergenceReport& report, const std::array<double, K>& reference,
                        std::size_t rows, double factor, std::vector<ReproductionCheck>& out)
{
    for (std::size_t i = 0; i < rows; ++i)
    {
        int const N = kReferenceN[i];
        ReproductionCheck c{"error N=" + std::to_string(N), false, "missing row"};
        if (auto const* r = find_row(report, N); r && r->error)
        {
            double const ratio = *r->error / reference[i];
            c.pass = ratio >= 1 / factor && ratio <= factor;
            c.detail = sci(*r->error) + " vs " + sci(reference[i]) + " (ratio " + sci(ratio)
                       + ", allowed factor " + sci(factor) + ")";
        }
        out.push_back(std::move(c));
    }
}

std::vector<ReproductionCheck> check_example_1(const ConvergenceReport& report)
{
    std::vector<ReproductionCheck> out;
    error_ratio_checks(report, kExample1ReferenceErrors, 7, 3.0, out);

    ReproductionCheck floor{"error N=512", false, "missing row"};
    if (auto const* r = find_row(report, 512); r && r->error)
    {
        floor.pass = *r->error <= 1e-12;
        floor.detail = sci(*r->error) + " <= 1e-12";
    }
    out.push_back(std::move(floor));

    for (int N : {16, 32, 64, 128})
    {
        ReproductionCheck c{"rate c N=" + std::to_string(N), false, "no rate"};
        if (auto const* r = find_row(report, N); r && r->rate_c)
        {
            c.pass = *r->rate_c >= 1.3 && *r->rate_c <= 1.7;
            c.detail = sci(*r->rate_c) + " in [1.3, 1.7]";
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<ReproductionCheck> check_example_2(const ConvergenceReport& report)
{
    std::vector<ReproductionCheck> out;

    ReproductionCheck target{"value N=256", false, "missing row"};
    auto const* r256 = find_row(report, 256);
    if (r256)
    {
        double const d = std::abs(r256->value - kExample2Target);
        target.pass = d <= 1e-6;
        target.detail = "|value - " + sci(kExample2Target) + "| = " + sci(d) + " <= 1e-6";
    }
    out.push_back(std::move(target));

    ReproductionCheck mono{"stabilization", true, ""};
    double prev = std::numeric_limits<double>::infinity();
    for (int N = 16; N <= 256; N *= 2)
    {
        auto const* a = find_row(report, N);
        auto const* b = find_row(report, 2 * N);
        if (!a || !b)
        {
            mono.pass = false;
            mono.detail += "missing N=" + std::to_string(a ? 2 * N : N) + "; ";
            break;
        }
        double const d = std::abs(b->value - a->value);
        mono.detail += std::to_string(N) + ":" + sci(d) + " ";
        if (!(d < prev))
            mono.pass = false;
        prev = d;
    }
    out.push_back(std::move(mono));

    ReproductionCheck last{"value N=256 vs N=512", false, "missing row"};
    if (auto const* r512 = find_row(report, 512); r256 && r512)
    {
        double const d = std::abs(r512->value - r256->value);
        last.pass = d <= 1e-7;
        last.detail = sci(d) + " <= 1e-7";
    }
    out.push_back(std::move(last));
    return out;
}

std::vector<ReproductionCheck> check_example_3(const ConvergenceReport& report)
{
    std::vector<ReproductionCheck> out;
    error_ratio_checks(report, kExample3ReferenceErrors, 7, 10.0, out);

    // least-squares fit of ln e = a - c sqrt(N) over rows above the floor
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (auto const& r : report.rows)
    {
        if (!r.failure.empty() || !r.error || r.floor_flag || !(*r.error > 0))
            continue;
        double const x = std::sqrt(double(r.N));
        double const y = std::log(*r.error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    ReproductionCheck fit{"fitted decay exponent", false, "too few rows"};
    if (n >= 2)
    {
        double const c = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
        fit.pass = c >= 1.0;
        fit.detail = "c = " + sci(c) + " >= 1";
    }
    out.push_back(std::move(fit));
    return out;
}

}  // namespace

StudyConfig reproduction_config(int example_id)
{
    StudyConfig cfg;
    cfg.example_id = example_id;
    cfg.plan.rule = StepRule::InverseSqrtN;
    switch (example_id)
    {
    case 1:
    case 2: cfg.N_list = {4, 8, 16, 32, 64, 128, 256, 512}; break;
    case 3: cfg.N_list = {4, 8, 16, 32, 64, 128, 256}; break;
    default:
        throw Error(ErrorKind::InvalidArgument,
                    "no reproduction for example " + std::to_string(example_id));
    }
    return cfg;
}

std::vector<ReproductionCheck> check_reproduction(int example_id, const ConvergenceReport& report)
{
    switch (example_id)
    {
    case 1: return check_example_1(report);
    case 2: return check_example_2(report);
    case 3: return check_example_3(report);
    default:
        throw Error(ErrorKind::InvalidArgument,
                    "no reproduction for example " + std::to_string(example_id));
    }
}

}  // namespace nlevolve
