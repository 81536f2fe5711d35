// complexity.hpp - complex-multiplication-equivalent (CME) cost model and
// closed-form operation counts for every equalizer determination and
// per-symbol data estimation procedure.
//
// Unit: one complex multiplication or division costs 1, a real
// multiplication or division costs 1/4, additions are free. Arithmetic is
// exact rational; rounding to an integer (half-up) happens only at display.

#pragma once

#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "uwofdm/config.hpp"

namespace uwofdm {

using Rational = boost::rational<long long>;

/// Cost constants and composite-operation costs of the CME model.
struct CmeModel {
    static Rational complex_mul() { return 1; }
    static Rational complex_div() { return 1; }
    static Rational real_mul() { return Rational(1, 4); }
    static Rational real_div() { return Rational(1, 4); }
    static Rational addition() { return 0; }

    /// Cholesky factorization of an m x m Hermitian matrix: m^3/6.
    static Rational cholesky(long long m);
    /// One forward or backward substitution: m^2/2 + m/2.
    static Rational fwd_or_bwd_subst(long long m);
    /// A^{-1} B with A m x m HPD and B m x n_b, via Cholesky plus 2 n_b
    /// substitutions: m^3/6 + m^2 n_b + m n_b.
    static Rational solve_hpd(long long m, long long n_b);
    /// Radix-2 FFT of power-of-two length n: (n/2) log2(n).
    static Rational fft(long long n);
};

/// Estimator families as they appear in the complexity table. The direct
/// BLUE and LMMSE forms share one count, as do the two reduced forms.
enum class CmeKind {
    ci,
    tdw,
    lmmse_wiener,
    direct,     ///< BLUE or LMMSE, plain regularized-pseudoinverse form
    reduced,    ///< BLUE or LMMSE, matrix-inversion-lemma form
    sequential, ///< sequential LMMSE
};

const char* to_string(CmeKind kind);

/// CME count for determining the equalizer after a channel update.
Rational cme_determination(CmeKind kind, long long n, long long n_d, long long n_r);

/// CME count for estimating the data of one received OFDM symbol,
/// including the mandatory receive FFT.
Rational cme_per_symbol(CmeKind kind, long long n, long long n_d, long long n_r);

struct CmeReport {
    CmeKind kind{};
    Rational determination;
    Rational per_symbol;
    long long n = 0, n_d = 0, n_r = 0;
};

/// All six table rows for the configuration's (N, N_d, N_r).
std::vector<CmeReport> table2_report(const SystemConfig& config);

/// Half-up rounding of a nonnegative rational.
long long round_half_up(const Rational& r);

std::string render_cme_table(const std::vector<CmeReport>& rows);
std::string render_cme_csv(const std::vector<CmeReport>& rows);

} // namespace uwofdm
