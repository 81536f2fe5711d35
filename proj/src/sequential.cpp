#include <cmath>

#include "uwofdm/errors.hpp"
#include "uwofdm/estimators.hpp"

namespace uwofdm {
namespace {

struct GainStore {
    SequentialEqualizer* out;
    Eigen::Index nd;

    void push(Eigen::Index n, const CVec& k)
    {
        if (n < nd) {
            out->data_gains.push_back(k[n]);
            out->red_gains.push_back(k.tail(k.size() - nd));
        } else {
            out->joint_gains.push_back(k);
        }
    }
};

} // namespace

CMat SequentialEqualizer::error_cov() const
{
    const Eigen::Index nd = static_cast<Eigen::Index>(data_gains.size());
    return mse_final.topLeftCorner(nd, nd);
}

SequentialEqualizer sequential_lmmse_determine(const ChannelRealization& channel,
                                               const GeneratorSet& gen,
                                               const NoiseModel& noise, double sigma_d_sq,
                                               SequentialLevel level)
{
    if (noise.sigma_v_sq <= 0.0)
        throw ZeroNoise("sequential LMMSE needs sigma_n_sq > 0; the gain denominators "
                        "degenerate at zero noise");
    if (sigma_d_sq <= 0.0) throw ConfigError("sequential LMMSE: sigma_d_sq must be positive");

    const Eigen::Index nd = gen.code_gen.cols();
    const Eigen::Index m = gen.code_gen.rows();
    const Eigen::Index nr = m - nd;
    const CVec& h = channel.gain_sorted;
    if (h.size() != m) throw DimensionMismatch("sequential LMMSE: channel/generator mismatch");
    const double sv2 = noise.sigma_v_sq;

    SequentialEqualizer seq;
    seq.sigma_v_sq = sv2;
    seq.sigma_d_sq = sigma_d_sq;
    seq.data_gains.reserve(static_cast<size_t>(nd));
    seq.red_gains.reserve(static_cast<size_t>(nd));
    seq.joint_gains.reserve(static_cast<size_t>(nr));
    GainStore store{&seq, nd};

    if (level == SequentialLevel::generic) {
        // Textbook recursion: full vector h_s[n] and full matrix products.
        CMat mse = sigma_d_sq * (gen.code_gen * gen.code_gen.adjoint());
        for (Eigen::Index n = 0; n < m; ++n) {
            CVec hv = CVec::Zero(m);
            hv[n] = std::conj(h[n]);
            const CVec mh = mse * hv;
            const double den = sv2 + (hv.adjoint() * mh).value().real();
            const CVec k = mh / den;
            mse = (CMat::Identity(m, m) - k * hv.adjoint()) * mse;
            store.push(n, k);
        }
        seq.mse_final = mse;
        return seq;
    }

    if (level == SequentialLevel::diagonal) {
        // Diagonal system matrix: the matrix-vector products collapse to
        // one column of the MSE matrix per step.
        CMat mse = sigma_d_sq * (gen.code_gen * gen.code_gen.adjoint());
        for (Eigen::Index n = 0; n < m; ++n) {
            const CVec col = mse.col(n);
            const double den = sv2 + std::norm(h[n]) * mse(n, n).real();
            const CVec k = (std::conj(h[n]) / den) * col;
            mse.noalias() -= h[n] * k * col.adjoint();
            store.push(n, k);
        }
        seq.mse_final = mse;
        return seq;
    }

    // Partitioned level: during the first n_data steps the data block of
    // the MSE matrix stays real diagonal and only entry (n, n) changes, the
    // data/redundant coupling changes one column, and the gain has a single
    // data entry.
    RVec mse_data = RVec::Constant(nd, sigma_d_sq);
    CMat mse_dr = sigma_d_sq * gen.red_map;                       // n_red x n_data
    CMat mse_red = sigma_d_sq * (gen.red_map * gen.red_map.adjoint());
    for (Eigen::Index n = 0; n < nd; ++n) {
        const double abs2 = std::norm(h[n]);
        const cplx kd = std::conj(h[n]) / (sv2 / sigma_d_sq + abs2);
        const CVec old_col = mse_dr.col(n);
        const CVec kr = (std::conj(h[n]) / (sv2 + sigma_d_sq * abs2)) * old_col;
        mse_data[n] = sv2 / (sv2 / sigma_d_sq + abs2);
        mse_dr.col(n) = old_col - sigma_d_sq * h[n] * kr;
        mse_red.noalias() -= h[n] * kr * old_col.adjoint();
        seq.data_gains.push_back(kd);
        seq.red_gains.push_back(kr);
    }
    CMat mse(m, m);
    mse.topLeftCorner(nd, nd) = mse_data.cast<cplx>().asDiagonal();
    mse.bottomLeftCorner(nr, nd) = mse_dr;
    mse.topRightCorner(nd, nr) = mse_dr.adjoint();
    mse.bottomRightCorner(nr, nr) = mse_red;
    for (Eigen::Index n = nd; n < m; ++n) {
        const CVec col = mse.col(n);
        const double den = sv2 + std::norm(h[n]) * mse(n, n).real();
        const CVec k = (std::conj(h[n]) / den) * col;
        mse.noalias() -= h[n] * k * col.adjoint();
        seq.joint_gains.push_back(k);
    }
    seq.mse_final = mse;
    return seq;
}

CVec sequential_lmmse_estimate(const SequentialEqualizer& seq, const CVec& y,
                               const ChannelRealization& channel)
{
    const Eigen::Index nd = static_cast<Eigen::Index>(seq.data_gains.size());
    const Eigen::Index nr = static_cast<Eigen::Index>(seq.joint_gains.size());
    const Eigen::Index m = nd + nr;
    if (y.size() != m)
        throw DimensionMismatch("sequential estimate: receive vector length mismatch");
    if (channel.gain_sorted.size() != m)
        throw DimensionMismatch("sequential estimate: channel length mismatch");

    CVec c = CVec::Zero(m);
    // First n_data steps: data entry n is still zero, so the innovation is
    // y[n] itself; only that entry and the redundant block move.
    for (Eigen::Index n = 0; n < nd; ++n) {
        c[n] = seq.data_gains[static_cast<size_t>(n)] * y[n];
        c.tail(nr) += seq.red_gains[static_cast<size_t>(n)] * y[n];
    }
    for (Eigen::Index n = nd; n < m; ++n) {
        const cplx innovation = y[n] - channel.gain_sorted[n] * c[n];
        c += seq.joint_gains[static_cast<size_t>(n - nd)] * innovation;
    }
    return c.head(nd);
}

} // namespace uwofdm
