#include "waveorbit/spectral.hpp"

#include <fftw3.h>

#include <array>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "waveorbit/log.hpp"
#include "waveorbit/summation.hpp"

namespace waveorbit {

namespace {

constexpr double kPi = std::numbers::pi;

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// One in-place c2c transform pair for a fixed shape. Plans are created with
// FFTW_ESTIMATE so planning is deterministic and results are reproducible
// across runs.
class FftEngine {
public:
    explicit FftEngine(const std::array<std::int64_t, 3>& shape, int rank) : rank_(rank) {
        count_ = 1;
        for (int d = 0; d < rank_; ++d) {
            dims_[d] = static_cast<int>(shape[static_cast<std::size_t>(d)]);
            count_ *= dims_[d];
        }
        buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(count_)));
        if (!buf_) throw std::bad_alloc();
        std::lock_guard<std::mutex> lock(planner_mutex());
        fwd_ = fftw_plan_dft(rank_, dims_.data(), buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft(rank_, dims_.data(), buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!fwd_ || !bwd_) throw std::runtime_error("FFTW plan creation failed");
    }

    ~FftEngine() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }

    FftEngine(const FftEngine&) = delete;
    FftEngine& operator=(const FftEngine&) = delete;

    std::int64_t count() const { return count_; }
    cplx* data() { return reinterpret_cast<cplx*>(buf_); }
    void run_forward() { fftw_execute(fwd_); }
    void run_backward() { fftw_execute(bwd_); }

private:
    int rank_;
    std::array<int, 3> dims_{};
    std::int64_t count_ = 0;
    fftw_complex* buf_ = nullptr;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

FftEngine& engine_for(const Grid& g) {
    thread_local std::map<std::string, std::unique_ptr<FftEngine>> cache;
    const std::string key = g.cache_key();
    auto it = cache.find(key);
    if (it == cache.end()) {
        std::array<std::int64_t, 3> shape{g.points(0), g.dim() > 1 ? g.points(1) : 1,
                                          g.dim() > 2 ? g.points(2) : 1};
        it = cache.emplace(key, std::make_unique<FftEngine>(shape, g.dim())).first;
    }
    return *it->second;
}

// 1D engines for Bluestein work arrays, keyed by size.
FftEngine& engine_1d(std::int64_t n) {
    thread_local std::map<std::int64_t, std::unique_ptr<FftEngine>> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<FftEngine>(std::array<std::int64_t, 3>{n, 1, 1}, 1)).first;
    return *it->second;
}

// Parity of the flat index's digit sum equals the parity of sum_d n_d because
// every axis has an even point count; this realizes the exp(i*pi*sum n_d)
// phase that recenters the transform on [-L/2, L/2)^N.
inline int index_parity(const Grid& g, std::int64_t flat) {
    auto idx = g.unravel(flat);
    std::int64_t s = 0;
    for (int d = 0; d < g.dim(); ++d) s += idx[static_cast<std::size_t>(d)];
    return static_cast<int>(s & 1);
}

}  // namespace

std::vector<cplx> forward_coeffs(const ComplexField& u) {
    const Grid& g = u.grid();
    FftEngine& eng = engine_for(g);
    std::memcpy(eng.data(), u.values().data(), sizeof(cplx) * u.size());
    eng.run_forward();
    const double scale = 1.0 / static_cast<double>(g.point_count());
    std::vector<cplx> out(u.size());
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
        const double s = index_parity(g, i) ? -scale : scale;
        out[static_cast<std::size_t>(i)] = eng.data()[i] * s;
    }
    return out;
}

ComplexField inverse_coeffs(std::shared_ptr<const Grid> grid, const std::vector<cplx>& coeffs) {
    const Grid& g = *grid;
    if (static_cast<std::int64_t>(coeffs.size()) != g.point_count())
        throw std::invalid_argument("inverse_coeffs: coefficient count does not match grid");
    FftEngine& eng = engine_for(g);
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
        const cplx c = coeffs[static_cast<std::size_t>(i)];
        eng.data()[i] = index_parity(g, i) ? -c : c;
    }
    eng.run_backward();
    ComplexField out = make_uninitialized(std::move(grid));
    std::memcpy(out.values().data(), eng.data(), sizeof(cplx) * out.size());
    return out;
}

double lp_norm(const ComplexField& u, double r) {
    if (r < 1.0) throw std::invalid_argument("lp_norm: r must be >= 1");
    const auto& v = u.values();
    double sum;
    if (r == 2.0) {
        sum = pairwise_sum_indexed(0, v.size(), [&](std::size_t i) { return std::norm(v[i]); });
    } else {
        sum = pairwise_sum_indexed(0, v.size(),
                                   [&](std::size_t i) { return std::pow(std::abs(v[i]), r); });
    }
    return std::pow(sum * u.grid().cell_volume(), 1.0 / r);
}

double mass(const ComplexField& u) {
    const auto& v = u.values();
    return u.grid().cell_volume() *
           pairwise_sum_indexed(0, v.size(), [&](std::size_t i) { return std::norm(v[i]); });
}

double gradient_norm_sq(const ComplexField& u, const std::vector<cplx>& coeffs) {
    const Grid& g = u.grid();
    const auto& k2 = g.k_squared();
    const double boxv = g.box_volume();
    return boxv * pairwise_sum_indexed(0, coeffs.size(),
                                       [&](std::size_t i) { return k2[i] * std::norm(coeffs[i]); });
}

double gradient_norm_sq(const ComplexField& u) {
    return gradient_norm_sq(u, forward_coeffs(u));
}

cplx h1_inner(const ComplexField& u, const ComplexField& v) {
    require_same_grid(u, v, "h1_inner");
    const auto cu = forward_coeffs(u);
    const auto cv = forward_coeffs(v);
    const auto& k2 = u.grid().k_squared();
    const double boxv = u.grid().box_volume();
    const cplx s = pairwise_sum_indexed(0, cu.size(), [&](std::size_t i) {
        return (1.0 + k2[i]) * cu[i] * std::conj(cv[i]);
    });
    return boxv * s;
}

double h1_norm_sq(const ComplexField& u) {
    const auto cu = forward_coeffs(u);
    const auto& k2 = u.grid().k_squared();
    return u.grid().box_volume() * pairwise_sum_indexed(0, cu.size(), [&](std::size_t i) {
               return (1.0 + k2[i]) * std::norm(cu[i]);
           });
}

ComplexField minus_laplacian(const ComplexField& u) {
    auto c = forward_coeffs(u);
    const auto& k2 = u.grid().k_squared();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= k2[i];
    return inverse_coeffs(u.grid_ptr(), c);
}

namespace {

// exp(i*pi*lambda*q/M) with the phase reduced in extended precision; q is an
// integer that can reach ~(3M/2)^2, so a plain double product would lose
// several digits before the sin/cos.
inline cplx chirp_phase(double lambda, std::int64_t q, std::int64_t m_points) {
    const long double arg =
        std::fmod(static_cast<long double>(kPi) * static_cast<long double>(lambda) *
                      static_cast<long double>(q) / static_cast<long double>(m_points),
                  2.0L * static_cast<long double>(kPi));
    return cplx(static_cast<double>(std::cos(arg)), static_cast<double>(std::sin(arg)));
}

std::int64_t next_pow2(std::int64_t n) {
    std::int64_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Evaluates F_j = sum_{n=-M/2}^{M/2-1} a_n W^{n j}, W = exp(2*pi*i*lambda/M),
// for j = 0..M-1 via Bluestein's identity nj = (n^2 + j^2 - (j-n)^2)/2.
// Exact (to roundoff) for any real lambda.
class FractionalEvaluator {
public:
    FractionalEvaluator(std::int64_t m_points, double lambda)
        : m_(m_points), p_(next_pow2(2 * m_points)), lambda_(lambda) {
        // chirp FFT: G[(j-n) mod P] = W^{-(j-n)^2/2}
        FftEngine& eng = engine_1d(p_);
        cplx* w = eng.data();
        std::fill(w, w + p_, cplx{0.0, 0.0});
        for (std::int64_t m = -m_ / 2 + 1; m < 3 * m_ / 2; ++m) {
            const std::int64_t slot = ((m % p_) + p_) % p_;
            w[slot] = std::conj(chirp_phase(lambda_, m * m, m_));
        }
        eng.run_forward();
        chirp_fft_.assign(w, w + p_);
        a_phase_.resize(static_cast<std::size_t>(m_));
        b_phase_.resize(static_cast<std::size_t>(m_));
        out_phase_.resize(static_cast<std::size_t>(m_));
        for (std::int64_t i = 0; i < m_; ++i) {
            const std::int64_t n = i - m_ / 2;  // coefficient order -M/2..M/2-1
            // a_n = c_n exp(-i*pi*lambda*n): the -L/2 offset of the target points
            a_phase_[static_cast<std::size_t>(i)] = std::conj(chirp_phase(lambda_, n * m_, m_));
            b_phase_[static_cast<std::size_t>(i)] = chirp_phase(lambda_, n * n, m_);
            out_phase_[static_cast<std::size_t>(i)] = chirp_phase(lambda_, i * i, m_);
        }
    }

    // in: coefficients in FFT index order; out: samples at x_j, j = 0..M-1.
    void apply(const cplx* in, cplx* out) {
        FftEngine& eng = engine_1d(p_);
        cplx* w = eng.data();
        std::fill(w, w + p_, cplx{0.0, 0.0});
        for (std::int64_t i = 0; i < m_; ++i) {
            const std::int64_t n = i - m_ / 2;
            const std::int64_t fft_idx = (n + m_) % m_;  // FFT order slot of mode n
            w[i] = in[fft_idx] * a_phase_[static_cast<std::size_t>(i)] *
                   b_phase_[static_cast<std::size_t>(i)];
        }
        eng.run_forward();
        for (std::int64_t s = 0; s < p_; ++s) w[s] *= chirp_fft_[static_cast<std::size_t>(s)];
        eng.run_backward();
        const double scale = 1.0 / static_cast<double>(p_);
        for (std::int64_t j = 0; j < m_; ++j) {
            const std::int64_t slot = j + m_ / 2;  // conv index s = j + M/2
            out[j] = w[slot] * scale * out_phase_[static_cast<std::size_t>(j)];
        }
    }

private:
    std::int64_t m_;
    std::int64_t p_;
    double lambda_;
    std::vector<cplx> chirp_fft_;
    std::vector<cplx> a_phase_;
    std::vector<cplx> b_phase_;
    std::vector<cplx> out_phase_;
};

}  // namespace

namespace {

// coefficients -> samples over all lines of an N-d array, one axis at a time
void fractional_transform_all_axes(std::vector<cplx>& work,
                                   const std::array<std::int64_t, 3>& shape, int rank,
                                   double lambda) {
    const std::array<std::int64_t, 3> stride{shape[1] * shape[2], shape[2], 1};
    std::int64_t count = shape[0] * shape[1] * shape[2];
    std::vector<cplx> line_in, line_out;
    for (int axis = 0; axis < rank; ++axis) {
        const std::int64_t m = shape[static_cast<std::size_t>(axis)];
        FractionalEvaluator eval(m, lambda);
        line_in.resize(static_cast<std::size_t>(m));
        line_out.resize(static_cast<std::size_t>(m));
        const std::int64_t st = stride[static_cast<std::size_t>(axis)];
        for (std::int64_t a = 0; a < count / m; ++a) {
            std::int64_t base = 0;
            std::int64_t rem = a;
            for (int d = rank - 1; d >= 0; --d) {
                if (d == axis) continue;
                const std::int64_t sz = shape[static_cast<std::size_t>(d)];
                base += (rem % sz) * stride[static_cast<std::size_t>(d)];
                rem /= sz;
            }
            for (std::int64_t t = 0; t < m; ++t)
                line_in[static_cast<std::size_t>(t)] =
                    work[static_cast<std::size_t>(base + t * st)];
            eval.apply(line_in.data(), line_out.data());
            for (std::int64_t t = 0; t < m; ++t)
                work[static_cast<std::size_t>(base + t * st)] =
                    line_out[static_cast<std::size_t>(t)];
        }
    }
}

}  // namespace

DilateResult dilate_checked(const ComplexField& u, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
    const Grid& g = u.grid();
    DilateResult res{u, false, 0.0};
    if (lambda == 1.0) return res;

    const int rank = g.dim();

    if (lambda > 1.0) {
        // Energy that lands beyond the Nyquist band after the frequency scale
        // k -> lambda k; those modes fold back and alias.
        const auto coeffs = forward_coeffs(u);
        double total = 0.0, tail = 0.0;
        for (std::int64_t i = 0; i < g.point_count(); ++i) {
            const auto idx = g.unravel(i);
            bool folds = false;
            for (int d = 0; d < rank; ++d) {
                const double n = static_cast<double>(g.mode(d, idx[static_cast<std::size_t>(d)]));
                if (std::abs(n) * lambda >= static_cast<double>(g.points(d)) / 2.0) folds = true;
            }
            const double e = std::norm(coeffs[static_cast<std::size_t>(i)]);
            total += e;
            if (folds) tail += e;
        }
        if (total > 0.0 && tail / total > 1e-12) {
            res.aliased = true;
            res.alias_fraction = tail / total;
            log_warn("dilate: lambda=", lambda, " pushes energy fraction ", tail / total,
                     " past the Nyquist limit");
        }
    }

    const double amp = std::pow(lambda, 0.5 * static_cast<double>(rank));
    ComplexField out = make_uninitialized(u.grid_ptr());

    if (lambda <= 1.0) {
        // target points lambda*x_j stay inside the box: single-grid resampling
        std::vector<cplx> work = forward_coeffs(u);
        std::array<std::int64_t, 3> shape{g.points(0), rank > 1 ? g.points(1) : 1,
                                          rank > 2 ? g.points(2) : 1};
        fractional_transform_all_axes(work, shape, rank, lambda);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = amp * work[i];
    } else {
        // lambda*x_j leaves the box, which would wrap periodically; zero-pad
        // into an enlarged box first (exact for boundary-decayed fields), then
        // resample there and keep the central block.
        std::int64_t scale = 2;
        while (static_cast<double>(scale) < lambda) scale *= 2;
        std::array<double, 3> big_ext{};
        std::array<std::int64_t, 3> big_pts{1, 1, 1};
        for (int d = 0; d < rank; ++d) {
            big_ext[static_cast<std::size_t>(d)] = g.extent(d) * static_cast<double>(scale);
            big_pts[static_cast<std::size_t>(d)] = g.points(d) * scale;
        }
        auto big = std::make_shared<const Grid>(rank, big_ext, big_pts);
        ComplexField padded = ComplexField::zeros(big);
        std::array<std::int64_t, 3> off{};
        for (int d = 0; d < rank; ++d)
            off[static_cast<std::size_t>(d)] = (scale - 1) * g.points(d) / 2;
        auto big_flat = [&](const std::array<std::int64_t, 3>& idx) {
            std::int64_t f = idx[0];
            if (rank > 1) f = f * big->points(1) + idx[1];
            if (rank > 2) f = f * big->points(2) + idx[2];
            return f;
        };
        for (std::int64_t i = 0; i < g.point_count(); ++i) {
            auto idx = g.unravel(i);
            for (int d = 0; d < rank; ++d)
                idx[static_cast<std::size_t>(d)] += off[static_cast<std::size_t>(d)];
            padded[static_cast<std::size_t>(big_flat(idx))] = u[static_cast<std::size_t>(i)];
        }
        std::vector<cplx> work = forward_coeffs(padded);
        std::array<std::int64_t, 3> shape{big->points(0), rank > 1 ? big->points(1) : 1,
                                          rank > 2 ? big->points(2) : 1};
        fractional_transform_all_axes(work, shape, rank, lambda);
        for (std::int64_t i = 0; i < g.point_count(); ++i) {
            auto idx = g.unravel(i);
            for (int d = 0; d < rank; ++d)
                idx[static_cast<std::size_t>(d)] += off[static_cast<std::size_t>(d)];
            out[static_cast<std::size_t>(i)] = amp * work[static_cast<std::size_t>(big_flat(idx))];
        }
    }
    res.field = std::move(out);
    return res;
}

ComplexField dilate(const ComplexField& u, double lambda) {
    return dilate_checked(u, lambda).field;
}

ComplexField shift(const ComplexField& u, const std::array<double, 3>& offset) {
    const Grid& g = u.grid();
    auto c = forward_coeffs(u);
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
        const auto idx = g.unravel(i);
        double phase = 0.0;
        for (int d = 0; d < g.dim(); ++d)
            phase -= g.wavenumber(d, idx[static_cast<std::size_t>(d)]) *
                     offset[static_cast<std::size_t>(d)];
        c[static_cast<std::size_t>(i)] *= cplx(std::cos(phase), std::sin(phase));
    }
    return inverse_coeffs(u.grid_ptr(), c);
}

}  // namespace waveorbit
