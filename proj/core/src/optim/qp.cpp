#include "shapeopt/optim/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "shapeopt/errors.hpp"

namespace shapeopt::optim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Source { Equality, Inequality, Lower, Upper };

// Constraint n^T d >= c (or = c for equalities) with its origin in the QpProblem.
struct Row {
    Eigen::VectorXd n;
    double c;
    Source source;
    Eigen::Index index;
};

// Goldfarb-Idnani dual active-set solver. With B = L L^T and the active
// normals N, the QR factorisation L^{-1} N = Q R gives J = L^{-T} Q; the
// primal step is z = J_2 J_2^T n_p and the dual step r = R^{-1} J_1^T n_p.
// The factorisation is rebuilt whenever the active set changes, which is
// cheap at the problem sizes the SQP driver produces.
class DualActiveSet {
public:
    DualActiveSet(const Eigen::MatrixXd& B, std::vector<Row> rows) : rows_(std::move(rows)), n_(B.rows()) {
        llt_.compute(B);
        if (llt_.info() != Eigen::Success) throw ValidationError("QP Hessian is not positive definite");
        refactor();
    }

    Eigen::VectorXd x;
    std::vector<std::size_t> active;
    std::vector<double> u;

    void refactor() {
        const auto q = static_cast<Eigen::Index>(active.size());
        if (q == 0) {
            R_.resize(0, 0);
            J_ = llt_.matrixU().solve(Eigen::MatrixXd::Identity(n_, n_));
            return;
        }
        Eigen::MatrixXd N(n_, q);
        for (Eigen::Index k = 0; k < q; ++k) N.col(k) = rows_[active[static_cast<std::size_t>(k)]].n;
        const Eigen::MatrixXd M = llt_.matrixL().solve(N);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
        const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n_, n_);
        R_ = qr.matrixQR().topLeftCorner(q, q).triangularView<Eigen::Upper>();
        J_ = llt_.matrixU().solve(Q);
    }

    // Primal and dual step directions for adding constraint p. Returns false
    // when n_p is (numerically) a combination of the active normals, i.e. z = 0.
    bool directions(std::size_t p, Eigen::VectorXd& z, Eigen::VectorXd& r) const {
        const auto q = static_cast<Eigen::Index>(active.size());
        const Eigen::VectorXd d = J_.transpose() * rows_[p].n;
        z = J_.rightCols(n_ - q) * d.tail(n_ - q);
        r = R_.triangularView<Eigen::Upper>().solve(d.head(q));
        return d.tail(n_ - q).norm() > 1e-12 * d.norm();
    }

    double slack(std::size_t p) const { return rows_[p].n.dot(x) - rows_[p].c; }

    const Row& row(std::size_t p) const { return rows_[p]; }
    std::size_t row_count() const { return rows_.size(); }
    Eigen::VectorXd unconstrained(const Eigen::VectorXd& g) const { return -llt_.solve(g); }

private:
    std::vector<Row> rows_;
    Eigen::Index n_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::MatrixXd J_;
    Eigen::MatrixXd R_;
};

void check_dimensions(const QpProblem& qp) {
    const Eigen::Index n = qp.g.size();
    if (qp.B.rows() != n || qp.B.cols() != n) throw ValidationError("QP: Hessian and gradient sizes differ");
    if (qp.A_eq.rows() != qp.b_eq.size() || (qp.A_eq.rows() > 0 && qp.A_eq.cols() != n)) {
        throw ValidationError("QP: equality block has inconsistent dimensions");
    }
    if (qp.A_in.rows() != qp.b_in.size() || (qp.A_in.rows() > 0 && qp.A_in.cols() != n)) {
        throw ValidationError("QP: inequality block has inconsistent dimensions");
    }
    if ((qp.lower.size() != 0 && qp.lower.size() != n) || (qp.upper.size() != 0 && qp.upper.size() != n)) {
        throw ValidationError("QP: bounds have the wrong length");
    }
    for (Eigen::Index i = 0; i < qp.lower.size() && i < qp.upper.size(); ++i) {
        if (qp.lower[i] > qp.upper[i]) throw InfeasibleError("QP: lower bound exceeds upper bound for variable " + std::to_string(i));
    }
}

}  // namespace

QpSolution solve_qp_subproblem(const QpProblem& qp) {
    check_dimensions(qp);
    const Eigen::Index n = qp.g.size();

    std::vector<Row> rows;
    for (Eigen::Index i = 0; i < qp.A_eq.rows(); ++i) rows.push_back({qp.A_eq.row(i).transpose(), qp.b_eq[i], Source::Equality, i});
    const std::size_t n_eq = rows.size();
    for (Eigen::Index i = 0; i < qp.A_in.rows(); ++i) rows.push_back({-qp.A_in.row(i).transpose(), -qp.b_in[i], Source::Inequality, i});
    for (Eigen::Index i = 0; i < qp.lower.size(); ++i) {
        if (std::isfinite(qp.lower[i])) rows.push_back({Eigen::VectorXd::Unit(n, i), qp.lower[i], Source::Lower, i});
    }
    for (Eigen::Index i = 0; i < qp.upper.size(); ++i) {
        if (std::isfinite(qp.upper[i])) rows.push_back({-Eigen::VectorXd::Unit(n, i), -qp.upper[i], Source::Upper, i});
    }

    DualActiveSet s(qp.B, rows);
    s.x = s.unconstrained(qp.g);
    const auto tolerance = [&](std::size_t p) {
        return 1e-12 * (1.0 + std::abs(s.row(p).c) + s.row(p).n.lpNorm<Eigen::Infinity>() * s.x.lpNorm<Eigen::Infinity>());
    };

    Eigen::VectorXd z;
    Eigen::VectorXd r;
    int iterations = 0;

    // Equalities first; their multipliers are free in sign and they never leave the active set.
    for (std::size_t p = 0; p < n_eq; ++p) {
        const bool independent = s.directions(p, z, r);
        const double sp = s.slack(p);
        if (!independent) {
            if (std::abs(sp) <= 1e-9 * (1.0 + std::abs(s.row(p).c))) continue;  // redundant but consistent
            throw InfeasibleError("QP: equality constraint " + std::to_string(s.row(p).index) +
                                  " is inconsistent with the others");
        }
        const double t = -sp / z.dot(s.row(p).n);
        s.x += t * z;
        for (std::size_t k = 0; k < s.u.size(); ++k) s.u[k] -= t * r[static_cast<Eigen::Index>(k)];
        s.active.push_back(p);
        s.u.push_back(t);
        s.refactor();
        ++iterations;
    }

    const std::size_t max_iterations = 50 * (rows.size() + static_cast<std::size_t>(n)) + 100;
    while (true) {
        // Most violated inactive inequality.
        std::size_t p = rows.size();
        double worst = 0.0;
        for (std::size_t i = n_eq; i < rows.size(); ++i) {
            if (std::find(s.active.begin(), s.active.end(), i) != s.active.end()) continue;
            const double sp = s.slack(i);
            if (sp < -tolerance(i) && sp < worst) {
                worst = sp;
                p = i;
            }
        }
        if (p == rows.size()) break;

        double u_plus = 0.0;
        double sp = worst;
        while (true) {
            if (++iterations > static_cast<int>(max_iterations)) throw Error("QP: active-set iteration limit reached");
            const bool z_zero = !s.directions(p, z, r);

            // Partial step: largest dual step keeping active inequality multipliers non-negative.
            double t1 = kInf;
            std::size_t drop = s.active.size();
            for (std::size_t k = 0; k < s.active.size(); ++k) {
                if (s.active[k] < n_eq) continue;
                const double rk = r[static_cast<Eigen::Index>(k)];
                if (rk > 0.0 && s.u[k] / rk < t1) {
                    t1 = s.u[k] / rk;
                    drop = k;
                }
            }
            // Full step: makes constraint p active.
            const double t2 = z_zero ? kInf : -sp / z.dot(s.row(p).n);
            const double t = std::min(t1, t2);
            if (!std::isfinite(t)) throw InfeasibleError("QP: constraints admit no feasible point");

            for (std::size_t k = 0; k < s.u.size(); ++k) s.u[k] -= t * r[static_cast<Eigen::Index>(k)];
            u_plus += t;
            if (!z_zero) s.x += t * z;

            if (t2 <= t1) {
                s.active.push_back(p);
                s.u.push_back(u_plus);
                s.refactor();
                break;
            }
            s.active.erase(s.active.begin() + static_cast<std::ptrdiff_t>(drop));
            s.u.erase(s.u.begin() + static_cast<std::ptrdiff_t>(drop));
            s.refactor();
            sp = s.slack(p);
            if (sp >= -tolerance(p)) break;  // already satisfied after the partial step
        }
    }

    QpSolution out;
    out.d = s.x;
    out.mu = Eigen::VectorXd::Zero(qp.A_eq.rows());
    out.lambda = Eigen::VectorXd::Zero(qp.A_in.rows());
    out.lambda_lower = Eigen::VectorXd::Zero(n);
    out.lambda_upper = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < s.active.size(); ++k) {
        const Row& row = s.row(s.active[k]);
        switch (row.source) {
            case Source::Equality: out.mu[row.index] = -s.u[k]; break;
            case Source::Inequality: out.lambda[row.index] = s.u[k]; break;
            case Source::Lower: out.lambda_lower[row.index] = s.u[k]; break;
            case Source::Upper: out.lambda_upper[row.index] = s.u[k]; break;
        }
    }
    out.iterations = iterations;
    return out;
}

}  // namespace shapeopt::optim
