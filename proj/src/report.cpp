#include "finosc/report.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <system_error>
#include <unistd.h>

namespace finosc {

std::string fmt17(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    if (res.ec != std::errc())
        throw Error("fmt17: conversion failed");
    return std::string(buf, res.ptr);
}

nlohmann::json params_json(const Params& prm)
{
    return {{"rho", prm.rho}, {"delta", prm.delta}, {"r", prm.r}, {"gamma", prm.gamma}};
}

std::string table_csv(const MatrixElementTable& t)
{
    std::string out = "k\\n";
    for (int n = 0; n <= t.N; ++n)
        out += "," + std::to_string(n);
    out += '\n';
    for (int k = 0; k <= t.N; ++k) {
        out += std::to_string(k);
        for (int n = 0; n <= t.N; ++n) {
            const auto z = t.entries(k, n);
            out += ",\"" + fmt17(z.real()) + "," + fmt17(z.imag()) + "\"";
        }
        out += '\n';
    }
    return out;
}

nlohmann::json table_json(const MatrixElementTable& t)
{
    nlohmann::json rows = nlohmann::json::array();
    for (int k = 0; k <= t.N; ++k) {
        nlohmann::json row = nlohmann::json::array();
        for (int n = 0; n <= t.N; ++n)
            row.push_back({{"re", t.entries(k, n).real()}, {"im", t.entries(k, n).imag()}});
        rows.push_back(std::move(row));
    }
    return {{"N", t.N}, {"params", params_json(t.params)}, {"kind", to_string(t.kind)}, {"entries", rows}};
}

nlohmann::json to_json(const VerificationRecord& r)
{
    return {{"identity", r.identity}, {"N", r.N},           {"params", params_json(r.params)},
            {"residual", r.residual}, {"tolerance", r.tolerance}, {"pass", r.pass}};
}

std::string band_csv(const BandOperator& b)
{
    std::string out = "n,j,re,im\n";
    for (int n = 0; n <= b.N; ++n)
        for (int j = b.band_lo; j <= b.band_hi; ++j) {
            if (n + j < 0 || n + j > b.N)
                continue;
            const auto z = b.coeff(n, j);
            out += std::to_string(n) + "," + std::to_string(j) + "," + fmt17(z.real()) + "," + fmt17(z.imag()) + "\n";
        }
    return out;
}

std::string curve_csv(const SqueezeCurve& c)
{
    std::string out = "# N=" + std::to_string(c.N) + ", rho=" + fmt17(c.rho) + ", r=" + fmt17(c.r) +
                      ", phase_convention=" + c.phase_convention + "\n";
    out += "theta,z2\n";
    for (size_t i = 0; i < c.theta.size(); ++i)
        out += fmt17(c.theta[i]) + "," + fmt17(c.z2[i]) + "\n";
    return out;
}

nlohmann::json parity_json(const ParityReport& p)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : p.entries)
        arr.push_back({{"N", e.N}, {"rho", p.rho}, {"r", p.r}, {"grid", p.grid}, {"min_z2", e.min_z2},
                       {"squeezed", e.squeezed}});
    return arr;
}

nlohmann::json contraction_json(const ContractionReport& c)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : c.entries) {
        nlohmann::json ladder = nlohmann::json::array();
        for (const auto& b : c.ladder)
            if (b.N == e.N)
                ladder.push_back({{"n", b.n}, {"deviation", b.deviation}, {"bound", b.bound}, {"within", b.within}});
        arr.push_back({{"N", e.N},
                       {"rho_scaled", e.rho_scaled},
                       {"r_scaled", e.r_scaled},
                       {"in_window", e.in_window},
                       {"out_window", e.out_window},
                       {"ratio", e.ratio},
                       {"kappa", e.kappa},
                       {"ladder", ladder},
                       {"monotone_checked", c.monotone_checked},
                       {"monotone", c.monotone},
                       {"decay_exponent", c.decay_exponent},
                       {"kappa_bounded", c.kappa_bounded}});
    }
    return arr;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void atomic_write(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty())
        dir = ".";
    const fs::path tmp = dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw Error("cannot open " + tmp.string() + " for writing");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        os.flush();
        if (!os)
            throw Error("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("rename failed: " + ec.message());
    }
}

}  // namespace finosc
