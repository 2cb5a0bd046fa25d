#include "kaf/rbf_network.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace kaf {

void RbfNetwork::check_dim(std::span<const double> u) const {
    if (!empty() && u.size() != dim_) {
        throw std::invalid_argument(
            "RbfNetwork: input has dimension " + std::to_string(u.size()) +
            ", centers have dimension " + std::to_string(dim_));
    }
}

double RbfNetwork::predict(std::span<const double> u) const {
    if (empty()) {
        return 0.0;
    }
    check_dim(u);
    const double h = kernel_.bandwidth;
    double out = 0.0;
    const double* c = centers_.data();
    for (std::size_t j = 0; j < coefficients_.size(); ++j, c += dim_) {
        double sq = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) {
            const double d = u[k] - c[k];
            sq += d * d;
        }
        out += coefficients_[j] * std::exp(-h * sq);
    }
    return out;
}

void RbfNetwork::append_center(std::span<const double> u, double coefficient) {
    if (u.empty()) {
        throw std::invalid_argument("RbfNetwork: center must be non-empty");
    }
    check_dim(u);
    if (empty()) {
        dim_ = u.size();
    }
    centers_.insert(centers_.end(), u.begin(), u.end());
    coefficients_.push_back(coefficient);
}

void RbfNetwork::merge_coefficient(std::size_t index, double delta) {
    if (index >= coefficients_.size()) {
        throw std::invalid_argument(
            "RbfNetwork: coefficient index " + std::to_string(index) +
            " out of range (size " + std::to_string(coefficients_.size()) + ")");
    }
    coefficients_[index] += delta;
}

std::span<const double> RbfNetwork::center(std::size_t index) const {
    if (index >= coefficients_.size()) {
        throw std::invalid_argument("RbfNetwork: center index out of range");
    }
    return {centers_.data() + index * dim_, dim_};
}

namespace {

void write_double(std::ostream& os, double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    os.write(buf, res.ptr - buf);
}

}  // namespace

void RbfNetwork::save(std::ostream& os) const {
    os << "kaf-rbf-v1\n";
    os << "bandwidth ";
    write_double(os, kernel_.bandwidth);
    os << "\ndim " << dim_ << "\nsize " << size() << "\n";
    for (std::size_t j = 0; j < size(); ++j) {
        for (std::size_t k = 0; k < dim_; ++k) {
            if (k) os << ' ';
            write_double(os, centers_[j * dim_ + k]);
        }
        os << '\n';
    }
    for (std::size_t j = 0; j < size(); ++j) {
        write_double(os, coefficients_[j]);
        os << '\n';
    }
}

RbfNetwork RbfNetwork::load(std::istream& is) {
    std::string magic;
    is >> magic;
    if (magic != "kaf-rbf-v1") {
        throw std::runtime_error("RbfNetwork::load: bad magic '" + magic + "'");
    }
    std::string key;
    double bandwidth = 0.0;
    std::size_t dim = 0, size = 0;
    is >> key >> bandwidth;
    if (key != "bandwidth") throw std::runtime_error("RbfNetwork::load: expected 'bandwidth'");
    is >> key >> dim;
    if (key != "dim") throw std::runtime_error("RbfNetwork::load: expected 'dim'");
    is >> key >> size;
    if (key != "size") throw std::runtime_error("RbfNetwork::load: expected 'size'");

    RbfNetwork net{KernelParams{bandwidth}};
    net.dim_ = dim;
    net.centers_.resize(size * dim);
    net.coefficients_.resize(size);
    for (double& v : net.centers_) is >> v;
    for (double& v : net.coefficients_) is >> v;
    if (!is) {
        throw std::runtime_error("RbfNetwork::load: truncated snapshot");
    }
    return net;
}

}  // namespace kaf
