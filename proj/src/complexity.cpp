#include "uwofdm/complexity.hpp"

#include <iomanip>
#include <sstream>

#include "uwofdm/errors.hpp"

namespace uwofdm {
namespace {

long long ilog2(long long n)
{
    if (n <= 0 || (n & (n - 1)) != 0)
        throw ConfigError("CME fft cost is defined for power-of-two lengths");
    long long k = 0;
    while ((1LL << k) < n) ++k;
    return k;
}

void check_dims(long long n, long long n_d, long long n_r)
{
    if (n <= 0 || n_d <= 0 || n_r <= 0)
        throw ConfigError("CME counts need positive N, N_d, N_r");
}

} // namespace

Rational CmeModel::cholesky(long long m) { return Rational(m * m * m, 6); }

Rational CmeModel::fwd_or_bwd_subst(long long m) { return Rational(m * m + m, 2); }

Rational CmeModel::solve_hpd(long long m, long long n_b)
{
    return cholesky(m) + Rational(2 * n_b) * fwd_or_bwd_subst(m);
}

Rational CmeModel::fft(long long n) { return Rational(n * ilog2(n), 2); }

const char* to_string(CmeKind kind)
{
    switch (kind) {
        case CmeKind::ci: return "ci";
        case CmeKind::tdw: return "tdw";
        case CmeKind::lmmse_wiener: return "lmmse_wiener";
        case CmeKind::direct: return "blue_lmmse_direct";
        case CmeKind::reduced: return "blue_lmmse_reduced";
        case CmeKind::sequential: return "sequential_lmmse";
    }
    throw UnknownKind("bad CmeKind value");
}

Rational cme_determination(CmeKind kind, long long n, long long n_d, long long n_r)
{
    check_dims(n, n_d, n_r);
    const Rational nd(n_d), nr(n_r);
    switch (kind) {
        case CmeKind::ci:
            // n_d complex divisions invert the data-carrier gains.
            return nd;
        case CmeKind::tdw:
            // The full diagonal channel is inverted.
            return nd + nr;
        case CmeKind::lmmse_wiener:
            return Rational(7, 6) * nd * nd * nd + Rational(5, 2) * nd * nd * nr +
                   2 * nd * nr * nr + Rational(1, 6) * nr * nr * nr + nd * nd +
                   Rational(3, 2) * nd * nr + Rational(5, 2) * nd + Rational(5, 2) * nr;
        case CmeKind::direct:
            return Rational(7, 6) * nd * nd * nd + Rational(3, 2) * nd * nd * nr +
                   3 * nd * nr + nd * nd + nd + nr;
        case CmeKind::reduced:
            return Rational(1, 6) * nr * nr * nr + 2 * nd * nd * nr +
                   Rational(3, 2) * nd * nr * nr + nd * nd + 3 * nd * nr +
                   Rational(5, 4) * nd + Rational(5, 4) * nr;
        case CmeKind::sequential:
            return nd * nd * nr + 3 * nd * nr * nr + nr * nr * nr + 4 * nd * nr +
                   2 * nr * nr + Rational(7, 4) * nd + Rational(7, 4) * nr;
    }
    throw UnknownKind("bad CmeKind value");
}

Rational cme_per_symbol(CmeKind kind, long long n, long long n_d, long long n_r)
{
    check_dims(n, n_d, n_r);
    const Rational rx_fft = CmeModel::fft(n);
    const Rational nd(n_d), nr(n_r);
    switch (kind) {
        case CmeKind::ci:
            return rx_fft + nd;
        case CmeKind::tdw:
            // Divide by the channel, one IFFT and one FFT around the window.
            return rx_fft + Rational(n * ilog2(n)) + nd + nr;
        case CmeKind::lmmse_wiener:
        case CmeKind::direct:
        case CmeKind::reduced:
            // All batch forms apply a full n_d x (n_d+n_r) matrix.
            return rx_fft + nd * (nd + nr);
        case CmeKind::sequential:
            return rx_fft + 2 * nd * nr + nr * nr + nd + nr;
    }
    throw UnknownKind("bad CmeKind value");
}

std::vector<CmeReport> table2_report(const SystemConfig& config)
{
    std::vector<CmeReport> rows;
    for (CmeKind kind : {CmeKind::ci, CmeKind::tdw, CmeKind::lmmse_wiener, CmeKind::direct,
                         CmeKind::reduced, CmeKind::sequential}) {
        CmeReport r;
        r.kind = kind;
        r.n = config.dft_len;
        r.n_d = config.n_data;
        r.n_r = config.n_red;
        r.determination = cme_determination(kind, r.n, r.n_d, r.n_r);
        r.per_symbol = cme_per_symbol(kind, r.n, r.n_d, r.n_r);
        rows.push_back(r);
    }
    return rows;
}

long long round_half_up(const Rational& r)
{
    // floor(r + 1/2); inputs are nonnegative counts.
    const Rational shifted = r + Rational(1, 2);
    return shifted.numerator() / shifted.denominator();
}

std::string render_cme_table(const std::vector<CmeReport>& rows)
{
    std::ostringstream out;
    out << std::left << std::setw(22) << "equalizer" << std::right << std::setw(16)
        << "determination" << std::setw(16) << "per symbol" << "\n";
    out << std::string(54, '-') << "\n";
    for (const auto& r : rows)
        out << std::left << std::setw(22) << to_string(r.kind) << std::right << std::setw(16)
            << round_half_up(r.determination) << std::setw(16) << round_half_up(r.per_symbol)
            << "\n";
    return out.str();
}

std::string render_cme_csv(const std::vector<CmeReport>& rows)
{
    std::ostringstream out;
    out << "kind,determination_cme,per_symbol_cme\n";
    for (const auto& r : rows)
        out << to_string(r.kind) << "," << round_half_up(r.determination) << ","
            << round_half_up(r.per_symbol) << "\n";
    return out.str();
}

} // namespace uwofdm
