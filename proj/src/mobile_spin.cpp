#include "spinlab/mobile_spin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinlab/dft.hpp"
#include "spinlab/eigen.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/kicked_spin.hpp"

namespace spinlab {

namespace {

constexpr double kFourPi = 2.0 * kTwoPi;
constexpr int kDenseCap = 256;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_dense(const GridSpec& grid) {
    if (grid.n_points > kDenseCap)
        throw std::invalid_argument("mobile spin: dense assembly is capped at N = 256");
}

void require_frame_period(const GridSpec& grid) {
    if (std::abs(grid.period - kFourPi) > 1e-12 * kFourPi)
        throw std::invalid_argument("mobile spin: the moving frame needs period L = 4 pi");
}

void require_state_size(const GridSpec& grid, std::size_t size, const char* who) {
    if (size != static_cast<std::size_t>(2 * grid.n_points))
        throw std::invalid_argument(std::string(who) + ": state size does not match the grid");
}

// Columns are the closed-form branch vectors at R, ordered so that branch 0
// is the (cos R/4, sin R/4) family with E_0 = R/2 + pi/2.
Mat2C frame_rotation(double r) {
    double c = std::cos(r / 4.0), s = std::sin(r / 4.0);
    return Mat2C{c, -s, s, c};
}

cxd branch_energy_phase(double r, int s) {
    double e = r / 2.0 + (s == 0 ? kPi / 2.0 : -kPi / 2.0);
    return std::exp(cxd(0.0, -e));
}

// e^{-i k_n^2 / (2 mass)} over DFT bins, k_n = 2 pi n / L, n in [-N/2, N/2).
std::vector<cxd> kinetic_phases(const GridSpec& grid) {
    const int n = grid.n_points;
    std::vector<cxd> d(n);
    for (int b = 0; b < n; ++b) {
        int mode = (b < n / 2) ? b : b - n;
        double k = kTwoPi * mode / grid.period;
        d[b] = std::exp(cxd(0.0, -k * k / (2.0 * grid.mass)));
    }
    return d;
}

// Position-space kernel of the kinetic factor, circulant in j - j'.
std::vector<cxd> kinetic_kernel(const GridSpec& grid) {
    std::vector<cxd> c = dft_inverse(kinetic_phases(grid));
    double scale = 1.0 / std::sqrt(static_cast<double>(grid.n_points));
    for (auto& z : c) z *= scale;
    return c;
}

// Antiperiodic analysis matrix G = F diag(e^{-i pi j / N}): row b holds the
// coefficient of the half-integer plane wave with mode number b (mod N).
DenseMat antiperiodic_matrix(int n) {
    DenseMat g = dft_matrix(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b)
        for (int j = 0; j < n; ++j)
            g.at(b, j) *= std::exp(cxd(0.0, -kPi * j / n));
    return g;
}

// Representative of bin (mod N) inside the window [lo, lo + N).
int window_mode(int bin, int n, int lo) {
    int base = (bin < n / 2) ? bin : bin - n;
    while (base < lo) base += n;
    while (base >= lo + n) base -= n;
    return base;
}

// G^dag diag(f(kappa_m - a)) G with kappa_m = 2 pi (m + 1/2) / L and the
// window picking each bin's mode representative m.
DenseMat sector_operator(const GridSpec& grid, const DenseMat& g, double a,
                         int lo, bool energy_not_phase) {
    const int n = grid.n_points;
    DenseMat dg = g;
    for (int b = 0; b < n; ++b) {
        double kappa = kTwoPi * (window_mode(b, n, lo) + 0.5) / grid.period;
        double k = kappa - a;
        cxd f = energy_not_phase
                    ? cxd(k * k / (2.0 * grid.mass), 0.0)
                    : std::exp(cxd(0.0, -k * k / (2.0 * grid.mass)));
        for (int j = 0; j < n; ++j) dg.at(b, j) *= f;
    }
    return g.adjoint() * dg;
}

// Branch-space projectors onto the connection sectors (1, +-i)/sqrt(2).
const Mat2C kSectorPlus{cxd(0.5, 0.0), cxd(0.0, -0.5), cxd(0.0, 0.5), cxd(0.5, 0.0)};
const Mat2C kSectorMinus{cxd(0.5, 0.0), cxd(0.0, 0.5), cxd(0.0, -0.5), cxd(0.5, 0.0)};

void write_block(DenseMat& m, int j, int jp, const Mat2C& blk) {
    m.at(2 * j, 2 * jp) = blk.a00;
    m.at(2 * j, 2 * jp + 1) = blk.a01;
    m.at(2 * j + 1, 2 * jp) = blk.a10;
    m.at(2 * j + 1, 2 * jp + 1) = blk.a11;
}

Mat2C read_block(const DenseMat& m, int j, int jp) {
    return Mat2C{m.at(2 * j, 2 * jp), m.at(2 * j, 2 * jp + 1),
                 m.at(2 * j + 1, 2 * jp), m.at(2 * j + 1, 2 * jp + 1)};
}

DenseMat conjugated_operator(const GridSpec& grid) {
    const int n = grid.n_points;
    DenseMat lab = build_lab_floquet(grid);
    std::vector<Mat2C> om(n);
    for (int j = 0; j < n; ++j) om[j] = frame_rotation(grid.site(j));

    DenseMat out(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < n; ++j)
        for (int jp = 0; jp < n; ++jp)
            write_block(out, j, jp, om[j].adjoint() * read_block(lab, j, jp) * om[jp]);
    return out;
}

DenseMat spectral_operator(const GridSpec& grid, const MomentumWindows& w) {
    const int n = grid.n_points;
    if ((w.offset_plus != 0 || w.offset_minus != 0) && !w.allow_misaligned)
        throw WindowError(
            "spectral mode: momentum windows are misaligned; set allow_misaligned "
            "to build the mismatched operator anyway");

    DenseMat g = antiperiodic_matrix(n);
    DenseMat kin_plus = sector_operator(grid, g, 0.25, -n / 2 + w.offset_plus, false);
    DenseMat kin_minus = sector_operator(grid, g, -0.25, -n / 2 - 1 + w.offset_minus, false);

    DenseMat u(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < n; ++j)
        for (int jp = 0; jp < n; ++jp) {
            Mat2C blk = kSectorPlus.scaled(kin_plus.at(j, jp)) +
                        kSectorMinus.scaled(kin_minus.at(j, jp));
            double r = grid.site(jp);
            blk.a00 *= branch_energy_phase(r, 0);
            blk.a10 *= branch_energy_phase(r, 0);
            blk.a01 *= branch_energy_phase(r, 1);
            blk.a11 *= branch_energy_phase(r, 1);
            write_block(u, j, jp, blk);
        }
    return u;
}

} // namespace

void validate_grid(const GridSpec& grid) {
    if (grid.n_points < 8 || !power_of_two(grid.n_points))
        throw std::invalid_argument("grid: n_points must be a power of two, at least 8");
    if (!(grid.period > 0.0))
        throw std::invalid_argument("grid: period must be positive");
    if (!(grid.mass > 0.0))
        throw std::invalid_argument("grid: mass must be positive");
}

DenseMat build_lab_floquet(const GridSpec& grid, bool spin_identity) {
    validate_grid(grid);
    require_dense(grid);
    const int n = grid.n_points;
    std::vector<cxd> ker = kinetic_kernel(grid);
    KickedSpinModel model = KickedSpinModel::standard_model();

    std::vector<Mat2C> kick(n);
    for (int j = 0; j < n; ++j)
        kick[j] = spin_identity ? Mat2C::identity()
                                : build_floquet(model, grid.site(j));

    DenseMat u(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < n; ++j)
        for (int jp = 0; jp < n; ++jp)
            write_block(u, j, jp, kick[jp].scaled(ker[(j - jp + n) % n]));
    return u;
}

LabState apply_lab_floquet(const GridSpec& grid, const LabState& state) {
    validate_grid(grid);
    require_state_size(grid, state.amplitudes.size(), "apply_lab_floquet");
    const int n = grid.n_points;

    KickedSpinModel model = KickedSpinModel::standard_model();
    std::vector<cxd> up(n), down(n);
    for (int j = 0; j < n; ++j) {
        Vec2C w = build_floquet(model, grid.site(j)) *
                  Vec2C{state.amplitudes[2 * j], state.amplitudes[2 * j + 1]};
        up[j] = w.v0;
        down[j] = w.v1;
    }

    std::vector<cxd> d = kinetic_phases(grid);
    for (auto* comp : {&up, &down}) {
        std::vector<cxd> hat = dft_forward(*comp);
        for (int b = 0; b < n; ++b) hat[b] *= d[b];
        *comp = dft_inverse(hat);
    }

    LabState out;
    out.normalized = state.normalized;
    out.amplitudes.resize(2 * static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        out.amplitudes[2 * j] = up[j];
        out.amplitudes[2 * j + 1] = down[j];
    }
    return out;
}

MovingFrameState frame_transform(const GridSpec& grid, const LabState& state) {
    validate_grid(grid);
    require_frame_period(grid);
    require_state_size(grid, state.amplitudes.size(), "frame_transform");
    const int n = grid.n_points;

    MovingFrameState out;
    out.boundary = Boundary::antiperiodic_4pi;
    out.amplitudes.resize(2 * static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        Vec2C psi = frame_rotation(grid.site(j)).adjoint() *
                    Vec2C{state.amplitudes[2 * j], state.amplitudes[2 * j + 1]};
        out.amplitudes[2 * j] = psi.v0;
        out.amplitudes[2 * j + 1] = psi.v1;
    }
    return out;
}

LabState frame_untransform(const GridSpec& grid, const MovingFrameState& state) {
    validate_grid(grid);
    require_frame_period(grid);
    require_state_size(grid, state.amplitudes.size(), "frame_untransform");
    if (state.boundary != Boundary::antiperiodic_4pi)
        throw std::invalid_argument(
            "frame_untransform: the twisted-seam variant is not implemented");
    const int n = grid.n_points;

    LabState out;
    out.amplitudes.resize(2 * static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        Vec2C lab = frame_rotation(grid.site(j)) *
                    Vec2C{state.amplitudes[2 * j], state.amplitudes[2 * j + 1]};
        out.amplitudes[2 * j] = lab.v0;
        out.amplitudes[2 * j + 1] = lab.v1;
    }
    return out;
}

DenseMat build_moving_frame_floquet(const GridSpec& grid, FrameMode mode,
                                    const MomentumWindows& windows) {
    validate_grid(grid);
    require_dense(grid);
    require_frame_period(grid);
    if (mode == FrameMode::conjugated) return conjugated_operator(grid);
    return spectral_operator(grid, windows);
}

DenseMat build_moving_frame_single_exp(const GridSpec& grid) {
    validate_grid(grid);
    require_dense(grid);
    require_frame_period(grid);
    const int n = grid.n_points;

    DenseMat g = antiperiodic_matrix(n);
    DenseMat en_plus = sector_operator(grid, g, 0.25, -n / 2, true);
    DenseMat en_minus = sector_operator(grid, g, -0.25, -n / 2 - 1, true);

    DenseMat h(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < n; ++j)
        for (int jp = 0; jp < n; ++jp)
            write_block(h, j, jp,
                        kSectorPlus.scaled(en_plus.at(j, jp)) +
                            kSectorMinus.scaled(en_minus.at(j, jp)));
    for (int j = 0; j < n; ++j) {
        double r = grid.site(j);
        h.at(2 * j, 2 * j) += r / 2.0 + kPi / 2.0;
        h.at(2 * j + 1, 2 * j + 1) += r / 2.0 - kPi / 2.0;
    }

    EigenPairSet es = jacobi_hermitian(h);
    DenseMat qe = es.vectors;
    for (std::size_t col = 0; col < qe.n; ++col) {
        cxd ph = std::exp(cxd(0.0, -es.values[col]));
        for (std::size_t row = 0; row < qe.n; ++row) qe.at(row, col) *= ph;
    }
    return qe * es.vectors.adjoint();
}

SpectrumComparison compare_frames(const GridSpec& grid) {
    SpectrumComparison out;
    out.lab_phases = unitary_eigensystem(build_lab_floquet(grid)).values;
    out.moving_phases =
        unitary_eigensystem(build_moving_frame_floquet(grid, FrameMode::spectral)).values;
    out.matching_distance = match_phase_sets(out.lab_phases, out.moving_phases);
    return out;
}

double match_phase_sets(const std::vector<double>& a,
                        const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("match_phase_sets: length mismatch");
    if (a.empty()) throw std::invalid_argument("match_phase_sets: empty lists");

    std::vector<double> sa(a), sb(b);
    for (auto& x : sa) x = wrap_angle(x);
    for (auto& x : sb) x = wrap_angle(x);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    const std::size_t k = sa.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t shift = 0; shift < k; ++shift) {
        double worst = 0.0;
        for (std::size_t i = 0; i < k && worst < best; ++i)
            worst = std::max(worst, ang_dist(sa[i], sb[(i + shift) % k]));
        best = std::min(best, worst);
    }
    return best;
}

} // namespace spinlab
