#pragma once

// Periodic grids on [-pi, pi)^d, Fourier transforms, operator symbols, norms.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include <fftw3.h>

#include "errors.hpp"
#include "specfun.hpp"

namespace fraclab::spectral {

using cplx = std::complex<double>;
using Wavevector = std::array<int, 3>;

class TorusGrid {
public:
    TorusGrid() = default;
    TorusGrid(int dim, int n) : dim_(dim), n_(n) {
        if (dim < 1 || dim > 3) throw PreconditionError("TorusGrid: dim must be 1, 2 or 3");
        if (n < 8 || !std::has_single_bit(static_cast<unsigned>(n)))
            throw PreconditionError("TorusGrid: n must be a power of two, at least 8");
    }
    int dim() const { return dim_; }
    int n() const { return n_; }
    std::size_t size() const {
        std::size_t s = 1;
        for (int d = 0; d < dim_; ++d) s *= static_cast<std::size_t>(n_);
        return s;
    }
    double spacing() const { return 2.0 * specfun::pi / n_; }
    double coordinate(int i) const { return -specfun::pi + i * spacing(); }
    double volume() const { return std::pow(2.0 * specfun::pi, dim_); }
    int wavenumber(int i) const { return i < n_ / 2 ? i : i - n_; }
    // multi-index of a flat row-major index
    std::array<int, 3> unflatten(std::size_t idx) const {
        std::array<int, 3> m{0, 0, 0};
        for (int d = dim_ - 1; d >= 0; --d) {
            m[static_cast<std::size_t>(d)] = static_cast<int>(idx % static_cast<std::size_t>(n_));
            idx /= static_cast<std::size_t>(n_);
        }
        return m;
    }
    Wavevector wavevector(std::size_t idx) const {
        auto m = unflatten(idx);
        Wavevector k{0, 0, 0};
        for (int d = 0; d < dim_; ++d) k[static_cast<std::size_t>(d)] = wavenumber(m[static_cast<std::size_t>(d)]);
        return k;
    }
    bool operator==(const TorusGrid& o) const { return dim_ == o.dim_ && n_ == o.n_; }

private:
    int dim_ = 1;
    int n_ = 8;
};

inline double k_squared(const Wavevector& k) {
    return static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1] + static_cast<double>(k[2]) * k[2];
}

enum class Direction { Forward, Inverse };

class Field {
public:
    Field() = default;
    explicit Field(const TorusGrid& g)
        : grid_(g), physical_(g.size(), 0.0), spectral_(g.size(), cplx(0.0, 0.0)), has_physical_(true), has_spectral_(true) {}

    static Field from_physical(const TorusGrid& g, std::vector<double> values) {
        if (values.size() != g.size()) throw PreconditionError("Field: physical array has the wrong size");
        Field f;
        f.grid_ = g;
        f.physical_ = std::move(values);
        f.has_physical_ = true;
        return f;
    }
    static Field from_spectral(const TorusGrid& g, std::vector<cplx> coeffs) {
        if (coeffs.size() != g.size()) throw PreconditionError("Field: spectral array has the wrong size");
        Field f;
        f.grid_ = g;
        f.spectral_ = std::move(coeffs);
        f.has_spectral_ = true;
        return f;
    }
    // f(x, y, z) sampled on the grid; unused coordinates are passed as 0
    static Field from_function(const TorusGrid& g, const std::function<double(double, double, double)>& fn) {
        std::vector<double> v(g.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto m = g.unflatten(i);
            double c[3] = {0.0, 0.0, 0.0};
            for (int d = 0; d < g.dim(); ++d) c[d] = g.coordinate(m[static_cast<std::size_t>(d)]);
            v[i] = fn(c[0], c[1], c[2]);
        }
        return from_physical(g, std::move(v));
    }

    const TorusGrid& grid() const { return grid_; }
    bool has_physical() const { return has_physical_; }
    bool has_spectral() const { return has_spectral_; }
    const std::vector<double>& physical() const {
        if (!has_physical_) throw PreconditionError("Field: physical representation is not current");
        return physical_;
    }
    const std::vector<cplx>& spectral() const {
        if (!has_spectral_) throw PreconditionError("Field: spectral representation is not current");
        return spectral_;
    }

private:
    friend Field transform(const Field& f, Direction dir);
    TorusGrid grid_;
    std::vector<double> physical_;
    std::vector<cplx> spectral_;
    bool has_physical_ = false;
    bool has_spectral_ = false;
};

namespace detail {

class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }
    fftw_plan get(int dim, int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_tuple(dim, n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::size_t total = 1;
        int dims[3] = {n, n, n};
        for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);
        auto* a = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
        auto* b = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
        fftw_plan p = fftw_plan_dft(dim, dims, a, b, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(a);
        fftw_free(b);
        plans_.emplace(key, p);
        return p;
    }
    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;
    ~PlanCache() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }

private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

// (-1)^(k_1 + ... + k_d): moves the DFT origin from x = 0 to x = -pi
inline double parity(const TorusGrid& g, std::size_t idx) {
    const auto m = g.unflatten(idx);
    const int s = m[0] + m[1] + m[2];
    return (s % 2 == 0) ? 1.0 : -1.0;
}

inline std::vector<cplx> forward_raw(const TorusGrid& g, const std::vector<double>& phys) {
    std::vector<cplx> in(phys.size());
    for (std::size_t i = 0; i < phys.size(); ++i) in[i] = cplx(phys[i], 0.0);
    std::vector<cplx> out(phys.size());
    fftw_execute_dft(PlanCache::instance().get(g.dim(), g.n(), FFTW_FORWARD), reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    for (std::size_t i = 0; i < out.size(); ++i)
        if (parity(g, i) < 0.0) out[i] = -out[i];
    return out;
}

inline std::vector<double> inverse_raw(const TorusGrid& g, const std::vector<cplx>& spec) {
    std::vector<cplx> in(spec);
    for (std::size_t i = 0; i < in.size(); ++i)
        if (parity(g, i) < 0.0) in[i] = -in[i];
    std::vector<cplx> out(spec.size());
    fftw_execute_dft(PlanCache::instance().get(g.dim(), g.n(), FFTW_BACKWARD), reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / static_cast<double>(g.size());
    std::vector<double> phys(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) phys[i] = out[i].real() * scale;
    return phys;
}

}  // namespace detail

// Forward: spectral = sum_x f(x) e^{-i k.x}. Inverse: physical = n^{-d} sum_k f_k e^{i k.x}.
// The result carries both representations.
inline Field transform(const Field& f, Direction dir) {
    Field out;
    out.grid_ = f.grid();
    if (dir == Direction::Forward) {
        out.physical_ = f.physical();
        out.spectral_ = detail::forward_raw(f.grid(), out.physical_);
    } else {
        out.spectral_ = f.spectral();
        out.physical_ = detail::inverse_raw(f.grid(), out.spectral_);
    }
    out.has_physical_ = out.has_spectral_ = true;
    return out;
}

// Fills in whichever representation is missing.
inline Field with_both(Field f) {
    if (f.has_physical() && f.has_spectral()) return f;
    return transform(f, f.has_physical() ? Direction::Forward : Direction::Inverse);
}

// Real field from a coefficient array; the spectrum is recomputed from the real
// samples so any anti-Hermitian rounding residue is dropped.
inline Field real_field(const TorusGrid& g, std::vector<cplx> coeffs) {
    const Field tmp = Field::from_spectral(g, std::move(coeffs));
    return transform(Field::from_physical(g, detail::inverse_raw(g, tmp.spectral())), Direction::Forward);
}

inline const std::vector<cplx>& spectral_of(const Field& f, Field& scratch) {
    if (f.has_spectral()) return f.spectral();
    scratch = transform(f, Direction::Forward);
    return scratch.spectral();
}

// max |f_k - conj(f_{-k})| relative to max |f_k|
inline double hermitian_defect(const Field& f) {
    Field scratch;
    const auto& s = spectral_of(f, scratch);
    const auto& g = f.grid();
    double defect = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto m = g.unflatten(i);
        std::size_t j = 0;
        for (int d = 0; d < g.dim(); ++d) {
            const int mi = m[static_cast<std::size_t>(d)];
            j = j * static_cast<std::size_t>(g.n()) + static_cast<std::size_t>((g.n() - mi) % g.n());
        }
        defect = std::max(defect, std::abs(s[i] - std::conj(s[j])));
        scale = std::max(scale, std::abs(s[i]));
    }
    return scale > 0.0 ? defect / scale : 0.0;
}

struct OperatorSymbol {
    std::function<double(const Wavevector&)> eval_at_mode;
    std::string name;
    double operator()(const Wavevector& k) const { return eval_at_mode(k); }

    static OperatorSymbol identity() {
        return {[](const Wavevector&) { return 1.0; }, "identity"};
    }
    static OperatorSymbol laplacian() {
        return {[](const Wavevector& k) { return -k_squared(k); }, "laplacian"};
    }
    // nu Laplacian + 1
    static OperatorSymbol allen_cahn_generator(double nu) {
        return {[nu](const Wavevector& k) { return 1.0 - nu * k_squared(k); }, "allen-cahn"};
    }
    // -nu Laplacian^2 - Laplacian
    static OperatorSymbol cahn_hilliard_generator(double nu) {
        return {[nu](const Wavevector& k) {
                    const double k2 = k_squared(k);
                    return -nu * k2 * k2 + k2;
                },
                "cahn-hilliard"};
    }
};

inline Field apply_symbol(const Field& f, const OperatorSymbol& sym) {
    const auto& g = f.grid();
    std::vector<cplx> out(f.spectral());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= sym(g.wavevector(i));
    return Field::from_spectral(g, std::move(out));
}

inline bool in_retained_band(const TorusGrid& g, const Wavevector& k) {
    const int cut = g.n() / 3;
    for (int d = 0; d < g.dim(); ++d)
        if (std::abs(k[static_cast<std::size_t>(d)]) > cut) return false;
    return true;
}

namespace detail {

// Spectrum of the trigonometric interpolant embedded in a grid twice as fine,
// normalized for that grid. Nyquist modes are split evenly between +-n/2.
inline std::vector<cplx> pad_spectrum(const TorusGrid& g, const std::vector<cplx>& s, const TorusGrid& fine) {
    std::vector<cplx> out(fine.size(), cplx(0.0, 0.0));
    const int n = g.n();
    const int m = fine.n();
    const double scale = static_cast<double>(fine.size()) / static_cast<double>(g.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == cplx(0.0, 0.0)) continue;
        const auto k = g.wavevector(i);
        // enumerate the Nyquist splits
        int nyq_mask = 0;
        int nyq_count = 0;
        for (int d = 0; d < g.dim(); ++d)
            if (k[static_cast<std::size_t>(d)] == -n / 2) {
                nyq_mask |= 1 << d;
                ++nyq_count;
            }
        const double share = scale / static_cast<double>(1 << nyq_count);
        for (int flip = 0; flip < (1 << g.dim()); ++flip) {
            if ((flip & ~nyq_mask) != 0) continue;
            std::size_t j = 0;
            for (int d = 0; d < g.dim(); ++d) {
                int kd = k[static_cast<std::size_t>(d)];
                if (flip & (1 << d)) kd = n / 2;
                j = j * static_cast<std::size_t>(m) + static_cast<std::size_t>((kd + m) % m);
            }
            out[j] += s[i] * share;
        }
    }
    return out;
}

}  // namespace detail

// Pointwise cube. With dealiasing the product is formed on a grid twice as fine and
// only modes with max |k_i| <= n/3 are kept, which makes them exact.
inline Field nonlinear_term(const Field& f, bool dealias = true) {
    const auto& g = f.grid();
    if (!dealias) {
        const auto& p = f.physical();
        std::vector<double> c(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) c[i] = p[i] * p[i] * p[i];
        return transform(Field::from_physical(g, std::move(c)), Direction::Forward);
    }
    Field scratch;
    const auto& s = spectral_of(f, scratch);
    const TorusGrid fine(g.dim(), 2 * g.n());
    auto fine_phys = detail::inverse_raw(fine, detail::pad_spectrum(g, s, fine));
    for (auto& v : fine_phys) v = v * v * v;
    const auto fine_spec = detail::forward_raw(fine, fine_phys);
    std::vector<cplx> out(g.size(), cplx(0.0, 0.0));
    const double scale = static_cast<double>(g.size()) / static_cast<double>(fine.size());
    const int m = fine.n();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto k = g.wavevector(i);
        if (!in_retained_band(g, k)) continue;
        std::size_t j = 0;
        for (int d = 0; d < g.dim(); ++d)
            j = j * static_cast<std::size_t>(m) + static_cast<std::size_t>((k[static_cast<std::size_t>(d)] + m) % m);
        out[i] = fine_spec[j] * scale;
    }
    return transform(Field::from_spectral(g, std::move(out)), Direction::Inverse);
}

inline Field mean_project(const Field& f) {
    Field scratch;
    std::vector<cplx> s = spectral_of(f, scratch);
    s[0] = cplx(0.0, 0.0);
    return transform(Field::from_spectral(f.grid(), std::move(s)), Direction::Inverse);
}

inline double mean(const Field& f) {
    Field scratch;
    return spectral_of(f, scratch)[0].real() / static_cast<double>(f.grid().size());
}

enum class NormKind { L2, H1, Hs };

// Parseval: ||f||^2 = (2 pi)^d / n^{2d} sum_k w(k) |f_k|^2 with w = (1 + |k|^2)^s.
inline double norm(const Field& f, NormKind kind, double s = 0.0) {
    const auto& g = f.grid();
    const auto& c = f.spectral();
    const double order = kind == NormKind::L2 ? 0.0 : (kind == NormKind::H1 ? 1.0 : s);
    double sum = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double w = order == 0.0 ? 1.0 : std::pow(1.0 + k_squared(g.wavevector(i)), order);
        sum += w * std::norm(c[i]);
    }
    const double nd = static_cast<double>(g.size());
    return std::sqrt(sum * g.volume() / (nd * nd));
}

// a + w (b - a) in spectral space
inline Field lerp_spectral(const Field& a, const Field& b, double w) {
    const auto& sa = a.spectral();
    const auto& sb = b.spectral();
    std::vector<cplx> out(sa.size());
    for (std::size_t i = 0; i < sa.size(); ++i) out[i] = sa[i] + w * (sb[i] - sa[i]);
    return Field::from_spectral(a.grid(), std::move(out));
}

struct Snapshot {
    Field field;
    double alpha = 0.0;
    double nu = 0.0;
};

namespace detail {

template <class T>
void put_le(std::ostream& os, T v) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
    unsigned char buf[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(buf), sizeof(T))) throw FormatError("FPF1: truncated file");
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

}  // namespace detail

inline void write_fpf(const std::string& path, const Field& f, double alpha, double nu) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError("FPF1: cannot open " + path + " for writing");
    os.write("FPF1", 4);
    detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid().dim()));
    detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid().n()));
    detail::put_le<double>(os, alpha);
    detail::put_le<double>(os, nu);
    for (double v : f.physical()) detail::put_le<double>(os, v);
    if (!os) throw FormatError("FPF1: write failed for " + path);
}

inline Snapshot read_fpf(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("FPF1: cannot open " + path);
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "FPF1", 4) != 0) throw FormatError("FPF1: bad magic in " + path);
    const auto dim = detail::get_le<std::uint32_t>(is);
    const auto n = detail::get_le<std::uint32_t>(is);
    Snapshot snap;
    snap.alpha = detail::get_le<double>(is);
    snap.nu = detail::get_le<double>(is);
    const TorusGrid g(static_cast<int>(dim), static_cast<int>(n));
    std::vector<double> v(g.size());
    for (auto& x : v) x = detail::get_le<double>(is);
    snap.field = Field::from_physical(g, std::move(v));
    return snap;
}

}  // namespace fraclab::spectral
