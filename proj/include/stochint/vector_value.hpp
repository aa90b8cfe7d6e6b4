#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace stochint {

// Coordinates in an orthonormal basis of a finite-dimensional subspace of a
// separable Hilbert space. Scalar quantities are dimension-1 values.
class VectorValue {
public:
    VectorValue() = default;

    explicit VectorValue(std::vector<double> coords) : coords_(std::move(coords)) {}

    VectorValue(std::initializer_list<double> coords) : coords_(coords) {}

    static VectorValue zero(std::size_t dim) {
        return VectorValue(std::vector<double>(dim, 0.0));
    }

    static VectorValue scalar(double x) { return VectorValue({x}); }

    std::size_t dim() const { return coords_.size(); }

    double operator[](std::size_t i) const { return coords_[i]; }
    double& operator[](std::size_t i) { return coords_[i]; }

    std::span<const double> coords() const { return coords_; }

    double scalar() const {
        if (coords_.size() != 1) {
            throw std::invalid_argument("VectorValue::scalar: dimension is not 1");
        }
        return coords_[0];
    }

    double sum_sq() const {
        double s = 0.0;
        for (double c : coords_) s += c * c;
        return s;
    }

    double norm() const { return std::sqrt(sum_sq()); }

    bool is_zero() const {
        for (double c : coords_) {
            if (c != 0.0) return false;
        }
        return true;
    }

    VectorValue& operator+=(const VectorValue& o) {
        check_dim(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
        return *this;
    }

    VectorValue& operator-=(const VectorValue& o) {
        check_dim(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
        return *this;
    }

    VectorValue& operator*=(double a) {
        for (double& c : coords_) c *= a;
        return *this;
    }

    friend VectorValue operator+(VectorValue a, const VectorValue& b) { return a += b; }
    friend VectorValue operator-(VectorValue a, const VectorValue& b) { return a -= b; }
    friend VectorValue operator*(double a, VectorValue v) { return v *= a; }
    friend VectorValue operator*(VectorValue v, double a) { return v *= a; }

    friend bool operator==(const VectorValue& a, const VectorValue& b) {
        return a.coords_ == b.coords_;
    }

private:
    void check_dim(const VectorValue& o) const {
        if (coords_.size() != o.coords_.size()) {
            throw std::invalid_argument("VectorValue: dimension mismatch");
        }
    }

    std::vector<double> coords_;
};

// ||v||^p computed from ||v||^2, avoiding the sqrt/square round trip for the
// common exponents.
inline double lp_power(double sum_sq, double p) {
    if (p == 2.0) return sum_sq;
    if (p == 1.0) return std::sqrt(sum_sq);
    return std::pow(sum_sq, 0.5 * p);
}

}  // namespace stochint
