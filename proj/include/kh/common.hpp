#ifndef KH_COMMON_HPP
#define KH_COMMON_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kh {

constexpr double pi = 3.14159265358979323846;

// Thrown on precondition violations (inadmissible parameters, bad domains).
class domain_error : public std::runtime_error {
  public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an iterative/adaptive scheme fails to reach its tolerance.
class convergence_error : public std::runtime_error {
  public:
    convergence_error(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved error estimate " + std::to_string(achieved) + ")"),
          achieved_error(achieved) {}
    double achieved_error;
};

// Point in R^N, N <= 3.  Fixed storage keeps the quadrature inner loops
// allocation-free.
struct Vec {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    int n = 0;

    Vec() = default;
    explicit Vec(double x) : v{x, 0.0, 0.0}, n(1) {}
    Vec(double x, double y) : v{x, y, 0.0}, n(2) {}
    Vec(double x, double y, double z) : v{x, y, z}, n(3) {}

    static Vec zero(int dim) {
        Vec p;
        p.n = dim;
        return p;
    }

    double& operator[](int i) { return v[static_cast<size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<size_t>(i)]; }
    int dim() const { return n; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < n; ++i) v[i] += o.v[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (int i = 0; i < n; ++i) v[i] *= s;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator*(double s, Vec a) { return a *= s; }
    friend Vec operator-(const Vec& a, const Vec& b) {
        Vec r = a;
        for (int i = 0; i < r.n; ++i) r.v[i] -= b.v[i];
        return r;
    }
};

inline double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (int i = 0; i < a.n; ++i) s += a.v[i] * b.v[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec unit(const Vec& a) {
    double r = norm(a);
    Vec u = a;
    if (r > 0)
        for (int i = 0; i < u.n; ++i) u.v[i] /= r;
    return u;
}

// xoshiro256++ with splitmix64 seeding.  Bit-reproducible across platforms,
// which std::uniform_real_distribution is not.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t z = seed;
        for (auto& word : s_) {
            z += 0x9e3779b97f4a7c15ULL;
            uint64_t x = z;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            word = x ^ (x >> 31);
        }
    }

    uint64_t next() {
        auto rotl = [](uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    Vec point(int dim, double a, double b) {
        Vec p = Vec::zero(dim);
        for (int i = 0; i < dim; ++i) p[i] = uniform(a, b);
        return p;
    }

  private:
    std::array<uint64_t, 4> s_{};
};

}  // namespace kh

#endif
