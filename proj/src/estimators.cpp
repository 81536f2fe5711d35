#include "uwofdm/estimators.hpp"

#include <cmath>

#include "uwofdm/dft.hpp"
#include "uwofdm/errors.hpp"

namespace uwofdm {
namespace {

constexpr double kGainFloor = 1e-14;     // |H| below this counts as a null
constexpr double kSvdRankTol = 1e-12;    // relative singular-value cutoff

void require_nonzero(const CVec& gains, const char* what)
{
    for (Eigen::Index i = 0; i < gains.size(); ++i)
        if (std::abs(gains[i]) < kGainFloor)
            throw ZeroChannelGain(std::string(what) + ": subcarrier " + std::to_string(i) +
                                  " sits in a channel null");
}

// X = A^{-1} B for Hermitian positive definite A via Cholesky.
CMat solve_hpd(const CMat& a, const CMat& b, const char* what)
{
    Eigen::LLT<CMat> llt(a);
    if (llt.info() != Eigen::Success)
        throw RankDeficient(std::string(what) + ": matrix is not positive definite");
    CMat x = llt.solve(b);
    if (!x.allFinite())
        throw RankDeficient(std::string(what) + ": solve produced non-finite values");
    return x;
}

CMat system_matrix(const ChannelRealization& channel, const GeneratorSet& gen)
{
    // H_s G_s = [H_s1; H_s2 T]; the diagonal channel only scales rows.
    return channel.gain_sorted.asDiagonal() * gen.code_gen;
}

} // namespace

const char* to_string(EqualizerKind kind)
{
    switch (kind) {
        case EqualizerKind::ci: return "ci";
        case EqualizerKind::tdw: return "tdw";
        case EqualizerKind::blue_direct: return "blue_direct";
        case EqualizerKind::blue_reduced: return "blue_reduced";
        case EqualizerKind::lmmse_wiener: return "lmmse_wiener";
        case EqualizerKind::lmmse_direct: return "lmmse_direct";
        case EqualizerKind::lmmse_reduced: return "lmmse_reduced";
        case EqualizerKind::zf_family: return "zf_family";
    }
    throw UnknownKind("bad EqualizerKind value");
}

EqualizerKind equalizer_kind_from_string(const std::string& name)
{
    for (auto k : {EqualizerKind::ci, EqualizerKind::tdw, EqualizerKind::blue_direct,
                   EqualizerKind::blue_reduced, EqualizerKind::lmmse_wiener,
                   EqualizerKind::lmmse_direct, EqualizerKind::lmmse_reduced,
                   EqualizerKind::zf_family})
        if (name == to_string(k)) return k;
    throw UnknownKind("unknown estimator kind: " + name);
}

Equalizer build_ci(const ChannelRealization& channel, const GeneratorSet& /*gen*/,
                   const NoiseModel& noise)
{
    require_nonzero(channel.gain_data, "ci");
    const Eigen::Index nd = channel.gain_data.size();
    const Eigen::Index nr = channel.gain_red.size();

    Equalizer eq;
    eq.kind = EqualizerKind::ci;
    eq.gain = CMat::Zero(nd, nd + nr);
    eq.error_cov = CMat::Zero(nd, nd);
    for (Eigen::Index i = 0; i < nd; ++i) {
        eq.gain(i, i) = 1.0 / channel.gain_data[i];
        eq.error_cov(i, i) = noise.sigma_v_sq / std::norm(channel.gain_data[i]);
    }
    return eq;
}

Equalizer build_tdw(const ChannelRealization& channel, const GeneratorSet& gen,
                    const SystemConfig& config, const NoiseModel& noise)
{
    require_nonzero(channel.gain_sorted, "tdw");
    const int n = config.dft_len;
    const Eigen::Index nd = config.n_data;

    // Dense matrix form [I 0] P^T B^T F W F^{-1} B P H_s^{-1}; the staged
    // FFT pipeline in apply_tdw_fast is validated against this.
    const CMat f = dft_matrix(n);
    CMat window = CMat::Zero(n, n);
    window.topLeftCorner(n - config.uw_len, n - config.uw_len) =
        CMat::Identity(n - config.uw_len, n - config.uw_len);
    const CMat f_inv = f.adjoint() / static_cast<double>(n);
    const CMat bp = gen.zero_insertion.cast<cplx>() * gen.sorting.cast<cplx>();
    CMat mid = bp.adjoint() * f * window * f_inv * bp;

    Equalizer eq;
    eq.kind = EqualizerKind::tdw;
    eq.gain = mid.topRows(nd) * channel.gain_sorted.cwiseInverse().asDiagonal();
    eq.error_cov = noise.sigma_v_sq * (eq.gain * eq.gain.adjoint());
    return eq;
}

CVec apply_tdw_fast(const CVec& y, const ChannelRealization& channel,
                    const GeneratorSet& gen, const SystemConfig& config)
{
    require_nonzero(channel.gain_sorted, "tdw");
    if (y.size() != config.n_data + config.n_red)
        throw DimensionMismatch("apply_tdw_fast: bad receive vector length");

    // Per-carrier divide, scatter to carriers, to time domain, zero the
    // guard samples, back, gather, take the data block.
    CVec freq = CVec::Zero(config.dft_len);
    for (size_t i = 0; i < gen.sorted_carrier.size(); ++i)
        freq[gen.sorted_carrier[i]] =
            y[static_cast<Eigen::Index>(i)] / channel.gain_sorted[static_cast<Eigen::Index>(i)];
    CVec t = dft_inverse(freq);
    t.tail(config.uw_len).setZero();
    const CVec back = dft_forward(t);
    CVec d(config.n_data);
    for (Eigen::Index i = 0; i < config.n_data; ++i)
        d[i] = back[gen.sorted_carrier[static_cast<size_t>(i)]];
    return d;
}

Equalizer build_blue_direct(const ChannelRealization& channel, const GeneratorSet& gen,
                            const NoiseModel& noise)
{
    const CMat x1 = system_matrix(channel, gen);
    const CMat s = x1.adjoint() * x1;
    const Eigen::Index nd = gen.code_gen.cols();

    Equalizer eq;
    eq.kind = EqualizerKind::blue_direct;
    eq.gain = solve_hpd(s, x1.adjoint(), "blue_direct");
    eq.error_cov = noise.sigma_v_sq * solve_hpd(s, CMat::Identity(nd, nd), "blue_direct");
    return eq;
}

namespace {

// Shared matrix-inversion-lemma core:
//   (D1 + T^H D2 T)^{-1} = D1i - D1i T^H (T D1i T^H + D2^{-1})^{-1} T D1i
// with diagonal D1, D2 given through their inverses.
CMat lemma_inverse(const CMat& red_map, const RVec& d1_inv, const RVec& d2_inv,
                   const char* what)
{
    const CMat t_d1i = red_map * d1_inv.asDiagonal();
    CMat inner = t_d1i * red_map.adjoint();
    inner += CMat(d2_inv.asDiagonal());
    Eigen::LLT<CMat> llt(inner);
    if (llt.info() != Eigen::Success)
        throw SingularInnerMatrix(std::string(what) + ": inner n_red x n_red matrix "
                                                      "is not positive definite");
    CMat sinv = -t_d1i.adjoint() * llt.solve(t_d1i);
    sinv += CMat(d1_inv.asDiagonal());
    if (!sinv.allFinite())
        throw SingularInnerMatrix(std::string(what) + ": non-finite lemma inverse");
    return sinv;
}

} // namespace

Equalizer build_blue_reduced(const ChannelRealization& channel, const GeneratorSet& gen,
                             const NoiseModel& noise)
{
    // D1 = H_s1^H H_s1 must be invertible; the reduced form also inverts
    // D2, so redundant-carrier nulls are rejected here even though the
    // direct form may still exist for them.
    require_nonzero(channel.gain_data, "blue_reduced");
    require_nonzero(channel.gain_red, "blue_reduced");

    const RVec d1_inv = channel.gain_data.cwiseAbs2().cwiseInverse();
    const RVec d2_inv = channel.gain_red.cwiseAbs2().cwiseInverse();
    const CMat sinv = lemma_inverse(gen.red_map, d1_inv, d2_inv, "blue_reduced");

    Equalizer eq;
    eq.kind = EqualizerKind::blue_reduced;
    eq.gain = sinv * system_matrix(channel, gen).adjoint();
    eq.error_cov = noise.sigma_v_sq * sinv;
    return eq;
}

Equalizer build_lmmse(const ChannelRealization& channel, const GeneratorSet& gen,
                      const NoiseModel& noise, double sigma_d_sq, LmmseForm form)
{
    if (sigma_d_sq <= 0.0) throw ConfigError("lmmse: sigma_d_sq must be positive");
    const double reg = noise.sigma_v_sq / sigma_d_sq;
    const Eigen::Index nd = gen.code_gen.cols();

    Equalizer eq;
    switch (form) {
        case LmmseForm::direct: {
            const CMat x1 = system_matrix(channel, gen);
            CMat s = x1.adjoint() * x1;
            s += reg * CMat::Identity(nd, nd);
            eq.kind = EqualizerKind::lmmse_direct;
            eq.gain = solve_hpd(s, x1.adjoint(), "lmmse_direct");
            eq.error_cov =
                noise.sigma_v_sq * solve_hpd(s, CMat::Identity(nd, nd), "lmmse_direct");
            return eq;
        }
        case LmmseForm::wiener: {
            require_nonzero(channel.gain_sorted, "lmmse_wiener");
            CMat inner = gen.code_gen * gen.code_gen.adjoint();
            inner += CMat((reg * channel.gain_sorted.cwiseAbs2().cwiseInverse()).asDiagonal());
            const CMat smoother =
                solve_hpd(inner, gen.code_gen, "lmmse_wiener").adjoint();
            eq.kind = EqualizerKind::lmmse_wiener;
            eq.gain = smoother * channel.gain_sorted.cwiseInverse().asDiagonal();
            // Bayesian MSE via sigma_d^2 (I - E H_s G_s); algebraically the
            // same covariance as the regularized-inverse route.
            eq.error_cov =
                sigma_d_sq * (CMat::Identity(nd, nd) - eq.gain * system_matrix(channel, gen));
            return eq;
        }
        case LmmseForm::reduced: {
            require_nonzero(channel.gain_sorted, "lmmse_reduced");
            const RVec d1_inv =
                (channel.gain_data.cwiseAbs2().array() + reg).inverse().matrix();
            const RVec d2_inv = channel.gain_red.cwiseAbs2().cwiseInverse();
            const CMat sinv = lemma_inverse(gen.red_map, d1_inv, d2_inv, "lmmse_reduced");
            eq.kind = EqualizerKind::lmmse_reduced;
            eq.gain = sinv * system_matrix(channel, gen).adjoint();
            eq.error_cov = noise.sigma_v_sq * sinv;
            return eq;
        }
    }
    throw UnknownKind("bad LmmseForm value");
}

Equalizer zf_family_member(const ChannelRealization& channel, const GeneratorSet& gen,
                           const CMat& a_free, const NoiseModel& noise,
                           ZfFamilyMember* factors)
{
    const Eigen::Index nd = gen.code_gen.cols();
    const Eigen::Index nr = gen.code_gen.rows() - nd;
    if (a_free.rows() != nd || a_free.cols() != nr)
        throw DimensionMismatch("zf_family_member: A must be n_data x n_red");

    const CMat x1 = system_matrix(channel, gen);
    Eigen::JacobiSVD<CMat> svd(x1, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVec sv = svd.singularValues();
    if (sv[nd - 1] <= kSvdRankTol * sv[0])
        throw RankDeficient("zf_family_member: system matrix loses column rank");

    ZfFamilyMember f;
    f.a_free = a_free;
    f.u = svd.matrixU();
    f.v = svd.matrixV();
    f.singular_values = sv;
    if (factors) *factors = f;
    return zf_family_member_from(f, a_free, noise);
}

Equalizer zf_family_member_from(const ZfFamilyMember& factors, const CMat& a_free,
                                const NoiseModel& noise)
{
    const Eigen::Index nd = factors.v.rows();
    const Eigen::Index nr = factors.u.rows() - nd;
    if (a_free.rows() != nd || a_free.cols() != nr)
        throw DimensionMismatch("zf_family_member_from: A must be n_data x n_red");

    CMat k(nd, nd + nr);
    k.leftCols(nd) = CMat(factors.singular_values.cwiseInverse().cast<cplx>().asDiagonal());
    k.rightCols(nr) = a_free;

    Equalizer eq;
    eq.kind = EqualizerKind::zf_family;
    eq.gain = factors.v * k * factors.u.adjoint();
    eq.error_cov = noise.sigma_v_sq * (eq.gain * eq.gain.adjoint());
    return eq;
}

CMat error_covariance(const Equalizer& eq, const NoiseModel& noise)
{
    switch (eq.kind) {
        case EqualizerKind::ci:
        case EqualizerKind::tdw:
        case EqualizerKind::blue_direct:
        case EqualizerKind::blue_reduced:
        case EqualizerKind::zf_family:
            // Unbiased estimators: the error is the filtered noise alone.
            return noise.sigma_v_sq * (eq.gain * eq.gain.adjoint());
        case EqualizerKind::lmmse_wiener:
        case EqualizerKind::lmmse_direct:
        case EqualizerKind::lmmse_reduced:
            // The gain already depends on the determination-time noise
            // level; the stored Bayesian covariance is the closed form.
            return eq.error_cov;
    }
    throw UnknownKind("bad EqualizerKind value");
}

} // namespace uwofdm
