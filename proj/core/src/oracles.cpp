#include "sbp/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace sbp {

namespace {

Eigen::Index variant_dimension(const FunctionOracle::Variant& v) {
  return std::visit(
      [](const auto& f) -> Eigen::Index {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearFn>) {
          return f.c.size();
        } else if constexpr (std::is_same_v<T, QuadraticForm>) {
          return f.a.rows();
        } else if constexpr (std::is_same_v<T, LeastSquares>) {
          return f.a.cols();
        } else if constexpr (std::is_same_v<T, SquaredDistance>) {
          return f.anchor.size();
        } else if constexpr (std::is_same_v<T, L1Norm>) {
          return f.dim;
        } else if constexpr (std::is_same_v<T, MaxOfAffine>) {
          return f.pieces.empty() ? 0 : f.pieces.front().c.size();
        } else {
          return f.dim;
        }
      },
      v);
}

bool variant_smooth(const FunctionOracle::Variant& v) {
  return !(std::holds_alternative<L1Norm>(v) || std::holds_alternative<MaxOfAffine>(v));
}

}  // namespace

FunctionOracle::FunctionOracle(Variant v)
    : v_(std::move(v)), dim_(variant_dimension(v_)), smooth_(variant_smooth(v_)) {
  if (auto* q = std::get_if<QuadraticForm>(&v_)) {
    if (q->a.rows() != q->a.cols())
      throw ValidationError("quadratic_form", "matrix must be square");
    Matrix sym = 0.5 * (q->a + q->a.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    const Vector& ev = es.eigenvalues();
    double scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    if (ev(0) < -1e-10 * std::max(scale, 1e-300))
      throw ValidationError("quadratic_form",
                            "matrix has a negative eigenvalue; the problem would not be convex");
    if (ev(0) < 0.0) {
      Vector clipped = ev.cwiseMax(0.0);
      sym = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
      sym = 0.5 * (sym + sym.transpose());
    }
    q->a = std::move(sym);
  }
  if (auto* m = std::get_if<MaxOfAffine>(&v_)) {
    if (m->pieces.empty())
      throw ValidationError("max_of_affine", "needs at least one piece");
    for (const AffinePiece& p : m->pieces)
      if (p.c.size() != dim_) throw DimensionMismatch(dim_, p.c.size());
  }
  if (auto* l = std::get_if<LeastSquares>(&v_)) {
    if (l->a.rows() != l->b.size()) throw DimensionMismatch(l->a.rows(), l->b.size());
  }
}

FunctionOracle FunctionOracle::linear(Vector c, double d) {
  return FunctionOracle(LinearFn{std::move(c), d});
}
FunctionOracle FunctionOracle::quadratic_form(Matrix a) {
  return FunctionOracle(QuadraticForm{std::move(a)});
}
FunctionOracle FunctionOracle::least_squares(Matrix a, Vector b) {
  return FunctionOracle(LeastSquares{std::move(a), std::move(b)});
}
FunctionOracle FunctionOracle::squared_distance(Vector anchor) {
  return FunctionOracle(SquaredDistance{std::move(anchor)});
}
FunctionOracle FunctionOracle::l1_norm(Eigen::Index dim) {
  return FunctionOracle(L1Norm{dim});
}
FunctionOracle FunctionOracle::max_of_affine(std::vector<AffinePiece> pieces) {
  return FunctionOracle(MaxOfAffine{std::move(pieces)});
}
FunctionOracle FunctionOracle::dist_to_disc_squared(Eigen::Index dim) {
  return FunctionOracle(DistToDiscSquared{dim});
}

double FunctionOracle::value(const Vector& x) const {
  if (x.size() != dim_) throw DimensionMismatch(dim_, x.size());
  return std::visit(
      [&x](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearFn>) {
          return f.c.dot(x) + f.d;
        } else if constexpr (std::is_same_v<T, QuadraticForm>) {
          return x.dot(f.a * x);
        } else if constexpr (std::is_same_v<T, LeastSquares>) {
          return (f.a * x - f.b).squaredNorm();
        } else if constexpr (std::is_same_v<T, SquaredDistance>) {
          return 0.5 * (x - f.anchor).squaredNorm();
        } else if constexpr (std::is_same_v<T, L1Norm>) {
          return x.lpNorm<1>();
        } else if constexpr (std::is_same_v<T, MaxOfAffine>) {
          double best = f.pieces.front().c.dot(x) + f.pieces.front().d;
          for (std::size_t i = 1; i < f.pieces.size(); ++i)
            best = std::max(best, f.pieces[i].c.dot(x) + f.pieces[i].d);
          return best;
        } else {
          double r = x.norm();
          return r >= 1.0 ? (r - 1.0) * (r - 1.0) : 0.0;
        }
      },
      v_);
}

Vector FunctionOracle::gradient(const Vector& x) const {
  if (!smooth_) throw NotSmooth();
  return subgradient(x);
}

Vector FunctionOracle::subgradient(const Vector& x) const {
  if (x.size() != dim_) throw DimensionMismatch(dim_, x.size());
  return std::visit(
      [&x](const auto& f) -> Vector {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearFn>) {
          return f.c;
        } else if constexpr (std::is_same_v<T, QuadraticForm>) {
          return 2.0 * (f.a * x);
        } else if constexpr (std::is_same_v<T, LeastSquares>) {
          return 2.0 * (f.a.transpose() * (f.a * x - f.b));
        } else if constexpr (std::is_same_v<T, SquaredDistance>) {
          return x - f.anchor;
        } else if constexpr (std::is_same_v<T, L1Norm>) {
          return x.unaryExpr([](double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); });
        } else if constexpr (std::is_same_v<T, MaxOfAffine>) {
          std::size_t arg = 0;
          double best = f.pieces.front().c.dot(x) + f.pieces.front().d;
          for (std::size_t i = 1; i < f.pieces.size(); ++i) {
            double v = f.pieces[i].c.dot(x) + f.pieces[i].d;
            if (v > best) {
              best = v;
              arg = i;
            }
          }
          return f.pieces[arg].c;
        } else {
          double r = x.norm();
          if (r < 1.0 || r == 0.0) return Vector::Zero(x.size());
          return 2.0 * x - (2.0 / r) * x;
        }
      },
      v_);
}

Vector FunctionOracle::first_order(const Vector& x) const {
  return subgradient(x);
}

double check_gradient(const FunctionOracle& oracle, const Vector& x, double h) {
  Vector g = oracle.gradient(x);
  double worst = 0.0;
  Vector xp = x, xm = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xp(i) = x(i) + h;
    xm(i) = x(i) - h;
    double cd = (oracle.value(xp) - oracle.value(xm)) / (2.0 * h);
    worst = std::max(worst, std::abs(cd - g(i)) / (1.0 + std::abs(g(i))));
    xp(i) = x(i);
    xm(i) = x(i);
  }
  return worst;
}

}  // namespace sbp
