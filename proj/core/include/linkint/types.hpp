#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace linkint {

/// Largest ambient dimension the engine handles with stack storage.
inline constexpr int kMaxDim = 16;

/// Point or vector in the ambient space R^N.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

/// N x k matrix whose columns are the chart partials dx/ds_i. Heap storage:
/// frames are built once per quadrature node, not per node pair.
using Frame = Eigen::MatrixXd;

/// Square matrix used for the determinant brackets.
using SquareMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// Parameter point of a chart (at most kMaxDim coordinates).
using Params = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

inline Vec make_vec(std::initializer_list<double> values) {
    Vec v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v(i++) = x;
    return v;
}

// Error hierarchy. Everything the engine throws derives from Error so the CLI
// can map failures to exit codes in one place.

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class DegenerateChartError : public Error {
public:
    using Error::Error;
};

class InvalidSceneError : public Error {
public:
    using Error::Error;
};

class InvalidSurfaceError : public Error {
public:
    using Error::Error;
};

/// Raised when the integrand cannot be resolved near a close approach of K and L.
/// Carries the parameter location (s on K, t on L) of the offending node.
class NearSingularError : public Error {
public:
    NearSingularError(const std::string& what, std::vector<double> s, std::vector<double> t,
                      double proximity)
        : Error(what), s_(std::move(s)), t_(std::move(t)), proximity_(proximity) {}

    const std::vector<double>& s() const { return s_; }
    const std::vector<double>& t() const { return t_; }
    double proximity() const { return proximity_; }

private:
    std::vector<double> s_;
    std::vector<double> t_;
    double proximity_;
};

}  // namespace linkint
