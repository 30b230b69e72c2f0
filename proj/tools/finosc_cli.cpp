// finosc: matrix-element tables, identity verification, squeezing sweeps and
// contraction studies for the finite u(2) oscillator.

#include "finosc/report.hpp"
#include "finosc/squeezing.hpp"
#include "finosc/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace finosc;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    int N = 10;
    std::string N_list;
    double rho = 0.8, delta = 0.3, r = 0.2, gamma = 0.9;
    int grid = 361;
    std::optional<double> tolerance;
    unsigned long long seed = 20240601ULL;
    std::string kind = "R";
    std::string format;
    std::string output;
    bool figure1 = false;
    int random = 0;

    Params params() const { return {rho, delta, r, gamma}; }
};

std::vector<int> parse_list(const std::string& s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            throw UsageError("--N-list: empty item");
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw UsageError("--N-list: not an integer: " + item);
        }
        if (pos != item.size() || v < 0)
            throw UsageError("--N-list: invalid entry: " + item);
        out.push_back(v);
    }
    if (out.empty())
        throw UsageError("--N-list: no entries");
    return out;
}

void emit(const RunConfig& cfg, const std::string& content)
{
    if (cfg.output.empty() || cfg.output == "-")
        std::cout << content;
    else
        atomic_write(cfg.output, content);
}

std::string format_or(const RunConfig& cfg, const std::string& fallback, std::initializer_list<const char*> allowed)
{
    const std::string f = cfg.format.empty() ? fallback : cfg.format;
    for (const char* a : allowed)
        if (f == a)
            return f;
    throw UsageError("--format " + f + " is not supported by '" + cfg.command + "'");
}

int cmd_table(const RunConfig& cfg)
{
    TableKind kind;
    try {
        kind = parse_table_kind(cfg.kind);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const std::string fmt = format_or(cfg, "csv", {"csv", "json"});
    const MatrixElementTable t = make_table(kind, cfg.params(), cfg.N);
    for (Eigen::Index i = 0; i < t.entries.size(); ++i)
        if (!std::isfinite(t.entries(i).real()) || !std::isfinite(t.entries(i).imag()))
            throw Error("table contains non-finite entries");
    emit(cfg, fmt == "csv" ? table_csv(t) : dump_json(table_json(t)));
    return 0;
}

int cmd_verify(const RunConfig& cfg)
{
    format_or(cfg, "json", {"json"});
    Precision prec;
    try {
        prec = precision_from_env();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    std::vector<Params> points{cfg.params()};
    for (const Params& p : random_params(cfg.seed, cfg.random))
        points.push_back(p);
    nlohmann::json all = nlohmann::json::array();
    std::string first_failure;
    for (const Params& p : points) {
        VerifyOptions opt;
        opt.N = cfg.N;
        opt.params = p;
        opt.tolerance = cfg.tolerance;
        opt.precision = prec;
        for (const auto& rec : run_verification(opt)) {
            if (!rec.pass && first_failure.empty())
                first_failure = rec.identity;
            all.push_back(to_json(rec));
        }
    }
    emit(cfg, dump_json(all));
    if (!first_failure.empty()) {
        std::cerr << "finosc verify: identity failed: " << first_failure << "\n";
        return 1;
    }
    return 0;
}

int cmd_squeeze(const RunConfig& cfg)
{
    const std::string fmt = format_or(cfg, "csv", {"csv", "json"});
    std::vector<SqueezeCurve> curves;
    if (cfg.figure1) {
        for (double r : {2.0, 4.0, 6.0})
            curves.push_back(sweep(40, 0.8, r, cfg.grid));
    } else {
        curves.push_back(sweep(cfg.N, cfg.rho, cfg.r, cfg.grid));
    }
    if (fmt == "csv") {
        std::string out;
        for (size_t i = 0; i < curves.size(); ++i) {
            if (i)
                out += "\n";
            out += curve_csv(curves[i]);
        }
        emit(cfg, out);
    } else {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : curves)
            arr.push_back({{"N", c.N}, {"rho", c.rho}, {"r", c.r}, {"phase_convention", c.phase_convention},
                           {"theta", c.theta}, {"z2", c.z2}, {"min", c.min()}, {"max", c.max()}});
        emit(cfg, dump_json(arr));
    }
    return 0;
}

int cmd_parity(const RunConfig& cfg)
{
    format_or(cfg, "json", {"json"});
    const std::vector<int> Ns = parse_list(cfg.N_list.empty() ? "4,5,6,7,8,9" : cfg.N_list);
    for (size_t i = 1; i < Ns.size(); ++i)
        if (Ns[i] != Ns[i - 1] + 1)
            throw UsageError("parity: --N-list must be consecutive integers");
    emit(cfg, dump_json(parity_json(parity_scan(Ns, cfg.rho, cfg.r, cfg.grid))));
    return 0;
}

int cmd_contract(const RunConfig& cfg)
{
    format_or(cfg, "json", {"json"});
    const std::vector<int> Ns = parse_list(cfg.N_list.empty() ? "8,16,32,64" : cfg.N_list);
    for (size_t i = 0; i < Ns.size(); ++i) {
        if (Ns[i] < 8)
            throw UsageError("contract: every N must be at least 8");
        if (i && Ns[i] <= Ns[i - 1])
            throw UsageError("contract: --N-list must be increasing");
    }
    const ContractionReport rep = contraction_study(Ns, cfg.params());
    emit(cfg, dump_json(contraction_json(rep)));
    if (rep.monotone_checked && !rep.monotone) {
        std::cerr << "finosc contract: out-of-window ratio is not monotonically decreasing\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"finosc: finite u(2) oscillator toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;
    double tol = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--N", cfg.N, "Representation label (basis size N+1)");
        sub->add_option("--N-list", cfg.N_list, "Comma-separated N values");
        sub->add_option("--rho", cfg.rho, "Coherent amplitude modulus");
        sub->add_option("--delta", cfg.delta, "Coherent amplitude phase");
        sub->add_option("--r", cfg.r, "Squeezing modulus");
        sub->add_option("--gamma", cfg.gamma, "Squeezing phase");
        sub->add_option("--grid", cfg.grid, "Phase grid size");
        sub->add_option("--tolerance", tol, "Override every identity tolerance");
        sub->add_option("--seed", cfg.seed, "Seed for random parameter draws");
        sub->add_option("--kind", cfg.kind, "Table kind: lambda, phi, R, Rinv");
        sub->add_option("--format", cfg.format, "csv or json");
        sub->add_option("--output", cfg.output, "Output file (stdout when omitted)");
        sub->add_flag("--figure1", cfg.figure1, "N=40, rho=0.8, r=2,4,6");
        sub->add_option("--random", cfg.random, "Extra random parameter draws for verify");
    };
    for (const char* name : {"table", "verify", "squeeze", "parity", "contract"}) {
        auto* sub = app.add_subcommand(name);
        add_common(sub);
        sub->callback([&cfg, name] { cfg.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (auto* sub : app.get_subcommands())
        if (sub->count("--tolerance"))
            cfg.tolerance = tol;

    try {
        if (cfg.N < 0)
            throw UsageError("--N must be non-negative");
        if (cfg.grid < 2)
            throw UsageError("--grid must be at least 2");
        if (cfg.tolerance && !(*cfg.tolerance > 0))
            throw UsageError("--tolerance must be positive");
        if (cfg.random < 0)
            throw UsageError("--random must be non-negative");
        if (cfg.rho < 0 || cfg.r < 0)
            throw UsageError("--rho and --r must be non-negative");

        if (cfg.command == "table")
            return cmd_table(cfg);
        if (cfg.command == "verify")
            return cmd_verify(cfg);
        if (cfg.command == "squeeze")
            return cmd_squeeze(cfg);
        if (cfg.command == "parity")
            return cmd_parity(cfg);
        return cmd_contract(cfg);
    } catch (const UsageError& e) {
        std::cerr << "finosc: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "finosc " << cfg.command << ": " << e.what() << "\n";
        return 1;
    }
}
