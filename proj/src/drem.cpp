#include "fctdrem/drem.hpp"

#include <stdexcept>
#include <string>

namespace fctdrem {

namespace {

void check_square(const Eigen::MatrixXd &m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("matrix must be square");
    }
    if (m.rows() < 1 || static_cast<std::size_t>(m.rows()) > kMaxDremDimension) {
        throw std::invalid_argument("cofactor path supports dimensions 1.." +
                                    std::to_string(kMaxDremDimension) + ", got " +
                                    std::to_string(m.rows()));
    }
}

Eigen::MatrixXd minor_of(const Eigen::MatrixXd &m, Eigen::Index row, Eigen::Index col) {
    const Eigen::Index n = m.rows();
    Eigen::MatrixXd out(n - 1, n - 1);
    for (Eigen::Index i = 0, oi = 0; i < n; ++i) {
        if (i == row) {
            continue;
        }
        for (Eigen::Index j = 0, oj = 0; j < n; ++j) {
            if (j == col) {
                continue;
            }
            out(oi, oj++) = m(i, j);
        }
        ++oi;
    }
    return out;
}

double laplace_det(const Eigen::MatrixXd &m) {
    const Eigen::Index n = m.rows();
    if (n == 1) {
        return m(0, 0);
    }
    if (n == 2) {
        return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    }
    double det = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (m(0, j) == 0.0) {
            continue;
        }
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        det += sign * m(0, j) * laplace_det(minor_of(m, 0, j));
    }
    return det;
}

} // namespace

double cofactor_det(const Eigen::MatrixXd &m) {
    check_square(m);
    return laplace_det(m);
}

AdjugateDet adjugate_and_det(const Eigen::MatrixXd &m) {
    check_square(m);
    const Eigen::Index n = m.rows();
    AdjugateDet out;
    out.adjugate.resize(n, n);
    if (n == 1) {
        out.adjugate(0, 0) = 1.0;
        out.det = m(0, 0);
        return out;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            // adj = transpose of the cofactor matrix
            out.adjugate(j, i) = sign * laplace_det(minor_of(m, i, j));
        }
    }
    // expansion along the first row, reusing the cofactors just computed
    for (Eigen::Index j = 0; j < n; ++j) {
        out.det += m(0, j) * out.adjugate(j, 0);
    }
    return out;
}

void validate_lags(std::span<const std::size_t> lags, std::size_t q) {
    if (lags.size() != q) {
        throw std::invalid_argument("expected " + std::to_string(q) + " lags, got " +
                                    std::to_string(lags.size()));
    }
    if (lags.empty() || lags[0] != 0) {
        throw std::invalid_argument("the first lag must be 0");
    }
    for (std::size_t i = 1; i < lags.size(); ++i) {
        if (lags[i] <= lags[i - 1]) {
            throw std::invalid_argument("lags must be strictly increasing");
        }
    }
}

ExtendedRegressor extend(std::span<const VectorLreSample> history,
                         std::span<const std::size_t> lags, std::int64_t k) {
    if (k < 0 || static_cast<std::size_t>(k) >= history.size()) {
        throw std::out_of_range("history does not cover sample index " + std::to_string(k));
    }
    const std::size_t q = history[static_cast<std::size_t>(k)].phi.size();
    validate_lags(lags, q);

    ExtendedRegressor ext;
    ext.k = k;
    ext.phi_e = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
    ext.y_e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(q));
    for (std::size_t r = 0; r < q; ++r) {
        const std::int64_t j = k - static_cast<std::int64_t>(lags[r]);
        if (j < 0) {
            continue;
        }
        const auto &s = history[static_cast<std::size_t>(j)];
        if (s.phi.size() != q) {
            throw std::invalid_argument("regressor dimension changed within the history");
        }
        for (std::size_t c = 0; c < q; ++c) {
            ext.phi_e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s.phi[c];
        }
        ext.y_e(static_cast<Eigen::Index>(r)) = s.y;
    }
    return ext;
}

MixedScalarLres mix(const ExtendedRegressor &ext) {
    auto [adj, det] = adjugate_and_det(ext.phi_e);
    return {det, adj * ext.y_e, ext.k};
}

// -----------------------------------------------------------------------------

DremMixer::DremMixer(std::size_t dimension, std::vector<std::size_t> lags)
    : q_(dimension), lags_(std::move(lags)) {
    if (q_ < 1 || q_ > kMaxDremDimension) {
        throw std::invalid_argument("DREM dimension must be in 1.." +
                                    std::to_string(kMaxDremDimension));
    }
    validate_lags(lags_, q_);
}

MixedScalarLres DremMixer::push(VectorLreSample sample) {
    if (sample.phi.size() != q_) {
        throw std::invalid_argument("regressor dimension mismatch in DREM mixer");
    }
    window_.push_front(std::move(sample));
    if (window_.size() > lags_.back() + 1) {
        window_.pop_back();
    }

    ExtendedRegressor ext;
    ext.k = next_k_++;
    const auto n = static_cast<Eigen::Index>(q_);
    ext.phi_e = Eigen::MatrixXd::Zero(n, n);
    ext.y_e = Eigen::VectorXd::Zero(n);
    for (std::size_t r = 0; r < q_; ++r) {
        if (lags_[r] >= window_.size()) {
            continue;   // before the first sample: zero row
        }
        const auto &s = window_[lags_[r]];
        for (std::size_t c = 0; c < q_; ++c) {
            ext.phi_e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s.phi[c];
        }
        ext.y_e(static_cast<Eigen::Index>(r)) = s.y;
    }
    return mix(ext);
}

} // namespace fctdrem
