#include "uwofdm/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "uwofdm/errors.hpp"

namespace uwofdm {
namespace {

constexpr double kRcondFloor = 1e-12;

// Entry (l, c) of F^{-1}, i.e. exp(+j 2 pi l c / N) / N.
cplx inv_dft_entry(int l, int c, int n)
{
    const double ang = 2.0 * std::numbers::pi *
                       static_cast<double>((static_cast<long long>(l) * c) % n) / n;
    return cplx(std::cos(ang), std::sin(ang)) / static_cast<double>(n);
}

// Tail-row blocks of F^{-1} B P for a given carrier assignment; enough to
// determine T without building the full mixing matrix.
void tail_blocks(int n, int n_uw, const std::vector<int>& data_idx,
                 const std::vector<int>& red_idx, CMat& m21, CMat& m22)
{
    const int head = n - n_uw;
    m21.resize(n_uw, static_cast<Eigen::Index>(data_idx.size()));
    m22.resize(n_uw, static_cast<Eigen::Index>(red_idx.size()));
    for (int l = 0; l < n_uw; ++l) {
        for (size_t j = 0; j < data_idx.size(); ++j)
            m21(l, static_cast<Eigen::Index>(j)) = inv_dft_entry(head + l, data_idx[j], n);
        for (size_t j = 0; j < red_idx.size(); ++j)
            m22(l, static_cast<Eigen::Index>(j)) = inv_dft_entry(head + l, red_idx[j], n);
    }
}

CMat solve_red_map(const CMat& m21, const CMat& m22)
{
    Eigen::PartialPivLU<CMat> lu(m22);
    if (lu.rcond() < kRcondFloor)
        throw SingularM22("mix22 is numerically singular (rcond < 1e-12); "
                          "degenerate redundant-carrier placement");
    return lu.solve(-m21);
}

double placement_objective(int n, int n_uw, const std::vector<int>& data_idx,
                           const std::vector<int>& red_idx)
{
    CMat m21, m22;
    tail_blocks(n, n_uw, data_idx, red_idx, m21, m22);
    return solve_red_map(m21, m22).squaredNorm();
}

std::vector<int> data_from(const std::vector<int>& pool, const std::vector<int>& reds)
{
    std::set<int> r(reds.begin(), reds.end());
    std::vector<int> out;
    for (int i : pool)
        if (!r.count(i)) out.push_back(i);
    return out;
}

} // namespace

GeneratorSet build_generator_set(const SystemConfig& config)
{
    config.validate();
    const int n = config.dft_len;
    const int nd = config.n_data;
    const int nr = config.n_red;
    const auto data_idx = config.data_indices();
    const auto& red_idx = config.redundant_indices;

    GeneratorSet g;
    std::set<int> reds(red_idx.begin(), red_idx.end());
    for (int i = 0; i < n; ++i) {
        bool zero = std::find(config.zero_indices.begin(), config.zero_indices.end(), i) !=
                    config.zero_indices.end();
        if (!zero) g.occupied.push_back(i);
    }

    g.zero_insertion = RMat::Zero(n, nd + nr);
    for (size_t j = 0; j < g.occupied.size(); ++j)
        g.zero_insertion(g.occupied[j], static_cast<Eigen::Index>(j)) = 1.0;

    g.sorting = RMat::Zero(nd + nr, nd + nr);
    for (size_t k = 0; k < g.occupied.size(); ++k) {
        const int carrier = g.occupied[k];
        Eigen::Index col;
        if (reds.count(carrier)) {
            col = nd + static_cast<Eigen::Index>(
                           std::find(red_idx.begin(), red_idx.end(), carrier) - red_idx.begin());
        } else {
            col = static_cast<Eigen::Index>(
                std::find(data_idx.begin(), data_idx.end(), carrier) - data_idx.begin());
        }
        g.sorting(static_cast<Eigen::Index>(k), col) = 1.0;
    }

    g.sorted_carrier.reserve(nd + nr);
    g.sorted_carrier.assign(data_idx.begin(), data_idx.end());
    g.sorted_carrier.insert(g.sorted_carrier.end(), red_idx.begin(), red_idx.end());

    // Column j of B*P is the unit vector at carrier sorted_carrier[j], so the
    // mixing matrix columns are columns of F^{-1}.
    const int head = n - config.uw_len;
    g.mix11.resize(head, nd);
    g.mix12.resize(head, nr);
    for (int l = 0; l < head; ++l) {
        for (int j = 0; j < nd; ++j) g.mix11(l, j) = inv_dft_entry(l, data_idx[j], n);
        for (int j = 0; j < nr; ++j) g.mix12(l, j) = inv_dft_entry(l, red_idx[j], n);
    }
    tail_blocks(n, config.uw_len, data_idx, red_idx, g.mix21, g.mix22);

    g.red_map = solve_red_map(g.mix21, g.mix22);
    g.code_gen.resize(nd + nr, nd);
    g.code_gen.topRows(nd) = CMat::Identity(nd, nd);
    g.code_gen.bottomRows(nr) = g.red_map;
    return g;
}

EnergyReport energy_report(const GeneratorSet& gen, const SystemConfig& config)
{
    if (gen.red_map.rows() != config.n_red || gen.red_map.cols() != config.n_data)
        throw DimensionMismatch("generator set inconsistent with config");
    EnergyReport r;
    r.trace_tth = gen.red_map.squaredNorm();
    r.data = config.n_data * config.sigma_d_sq / config.dft_len;
    r.redundant = config.sigma_d_sq * r.trace_tth / config.dft_len;
    r.uw = config.uw.squaredNorm();
    r.total = r.data + r.redundant + r.uw;
    return r;
}

SystemConfig optimize_redundant_placement(const SystemConfig& config_template,
                                          PlacementStrategy strategy,
                                          std::uint64_t /*seed*/,
                                          std::vector<double>* objective_trace)
{
    SystemConfig result = config_template;
    result.validate();
    const int n = result.dft_len;
    const int n_uw = result.uw_len;
    const int nr = result.n_red;

    // Candidate pool: every non-zero carrier position.
    std::set<int> zeros(result.zero_indices.begin(), result.zero_indices.end());
    std::vector<int> pool;
    for (int i = 0; i < n; ++i)
        if (!zeros.count(i)) pool.push_back(i);

    auto objective = [&](const std::vector<int>& reds) {
        return placement_objective(n, n_uw, data_from(pool, reds), reds);
    };

    if (strategy == PlacementStrategy::exhaustive) {
        const int k = static_cast<int>(pool.size());
        double count = 1.0;
        for (int i = 0; i < nr; ++i) count = count * (k - i) / (i + 1);
        if (count > 1e6)
            throw SearchSpaceTooLarge("exhaustive placement search over " +
                                      std::to_string(static_cast<long long>(count)) +
                                      " subsets exceeds the 1e6 cap");

        std::vector<int> sel(nr);
        for (int i = 0; i < nr; ++i) sel[i] = i;
        bool found = false;
        double best = std::numeric_limits<double>::infinity();
        std::vector<int> best_set;
        while (true) {
            std::vector<int> cand(nr);
            for (int i = 0; i < nr; ++i) cand[i] = pool[sel[i]];
            try {
                double obj = objective(cand);
                // Objectives within 1e-9 relative count as ties and resolve
                // lexicographically; the enumeration order is already
                // lexicographic over the sorted pool.
                const double tol =
                    found ? 1e-9 * std::max(1.0, std::abs(best)) : 0.0;
                if (!found || obj < best - tol) {
                    best = obj;
                    best_set = cand;
                    found = true;
                    if (objective_trace) objective_trace->push_back(obj);
                }
            } catch (const SingularM22&) {
            }
            int i = nr - 1;
            while (i >= 0 && sel[i] == k - nr + i) --i;
            if (i < 0) break;
            ++sel[i];
            for (int j = i + 1; j < nr; ++j) sel[j] = sel[j - 1] + 1;
        }
        if (!found) throw SingularM22("every candidate placement is degenerate");
        result.redundant_indices = best_set;
        result.validate();
        return result;
    }

    // Pairwise swap descent.
    std::vector<int> current = result.redundant_indices;
    std::sort(current.begin(), current.end());
    double cur_obj = std::numeric_limits<double>::infinity();
    bool cur_ok = false;
    try {
        cur_obj = objective(current);
        cur_ok = true;
    } catch (const SingularM22&) {
    }
    if (objective_trace && cur_ok) objective_trace->push_back(cur_obj);

    while (true) {
        double best = cur_obj;
        std::vector<int> best_set;
        bool any_finite = false;
        const auto data_now = data_from(pool, current);
        for (int r : current) {
            for (int d : data_now) {
                std::vector<int> cand;
                cand.reserve(current.size());
                for (int x : current)
                    if (x != r) cand.push_back(x);
                cand.push_back(d);
                std::sort(cand.begin(), cand.end());
                try {
                    double obj = objective(cand);
                    any_finite = true;
                    const double tol =
                        best == std::numeric_limits<double>::infinity()
                            ? 0.0
                            : 1e-9 * std::max(1.0, std::abs(best));
                    if (obj < best - tol ||
                        (std::abs(obj - best) <= tol && !best_set.empty() && cand < best_set)) {
                        best = obj;
                        best_set = cand;
                    }
                } catch (const SingularM22&) {
                }
            }
        }
        if (!cur_ok && !any_finite)
            throw SingularM22("descent neighborhood entirely degenerate");
        if (best_set.empty() || best >= cur_obj) break;
        current = best_set;
        cur_obj = best;
        cur_ok = true;
        if (objective_trace) objective_trace->push_back(cur_obj);
    }

    result.redundant_indices = current;
    result.validate();
    return result;
}

} // namespace uwofdm
