#pragma once

#include "finosc/common.hpp"

#include <optional>
#include <string>
#include <vector>

namespace finosc {

struct MomentSet {
    double j1 = 0.0, j2 = 0.0, j3 = 0.0;
    double j3sq = 0.0;
    double norm_sq = 1.0;  // kappa(r)
    // Only filled by the oracle path.
    std::optional<double> j1sq, j2sq;
};

// kappa(r) = 3F0(1/2, -N/2, (1-N)/2; 4 r^2) = ||S|0>||^2
double kappa(double r, int N);

// The polynomials G, H, J, L, M in r (they depend on N and r only).
struct AuxPolynomials {
    double G = 0.0, H = 0.0, J = 0.0, L = 0.0, M = 0.0;
    double kappa = 1.0;
};

AuxPolynomials aux_polynomials(double r, int N);

// Closed-form moments in the normalised state R|0>.
MomentSet moments(const Params& prm, int N);

// Dense expectation values in the normalised oracle state R|0>.
template <class T = double>
MomentSet oracle_moments(const Params& prm, int N);

// Z^2 along axis 1, 2 or 3. Axes 1 and 2 need the oracle second moments.
double z2_axis(const MomentSet& m, int axis, int N);

struct SqueezeCurve {
    int N = 0;
    double rho = 0.0;
    double r = 0.0;
    std::vector<double> theta;
    std::vector<double> z2;
    std::string phase_convention = "2delta-gamma";

    double min() const;
    double max() const;
    double amplitude() const { return max() - min(); }
};

// Z^2_3 over theta in [0, 2pi] (grid_size points); theta = 2 delta - gamma
// with delta = theta/2, gamma = 0.
SqueezeCurve sweep(int N, double rho, double r, int grid_size, Exec ex = Exec::parallel);

// Detection threshold for "squeezed".
inline bool is_squeezed(double min_z2) { return min_z2 < 1.0 - 1e-9; }

struct ParityEntry {
    int N = 0;
    double min_z2 = 0.0;
    bool squeezed = false;
};

struct ParityReport {
    double rho = 0.0, r = 0.0;
    int grid = 0;
    std::vector<ParityEntry> entries;
    // True when exactly the even N of the scan are squeezed.
    bool even_only() const;
};

ParityReport parity_scan(const std::vector<int>& Ns, double rho, double r, int grid, Exec ex = Exec::parallel);

struct ContractionEntry {
    int N = 0;
    double rho_scaled = 0.0;
    double r_scaled = 0.0;
    double in_window = 0.0;   // sum |c| over j = -2..2
    double out_window = 0.0;  // sum |c| over j = -9..-3 and j = 3
    double ratio = 0.0;
    double kappa = 1.0;       // kappa(r/N)
};

struct LadderBound {
    int N = 0;
    int n = 0;
    double deviation = 0.0;  // |<n+1|J+/sqrt(N)|n> - sqrt(n+1)|
    double bound = 0.0;      // 2 (n+1)^(3/2) / N
    bool within = false;
};

struct ContractionReport {
    double rho = 0.0, r = 0.0, delta = 0.0, gamma = 0.0;
    std::vector<ContractionEntry> entries;
    bool monotone_checked = false;
    bool monotone = true;
    double decay_exponent = 0.0;  // -slope of log ratio vs log N
    bool kappa_bounded = true;
    std::vector<LadderBound> ladder;
    bool ladder_ok = true;
};

// rho -> rho/sqrt(N), r -> r/N for each N in the list.
ContractionReport contraction_study(const std::vector<int>& Ns, const Params& base, Exec ex = Exec::parallel);

}  // namespace finosc
