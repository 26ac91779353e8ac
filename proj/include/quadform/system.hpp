#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quadform/errors.hpp"
#include "quadform/matrix.hpp"

namespace quadform {

enum class Kind { Continuous, Discrete };

inline std::string_view to_string(Kind k) { return k == Kind::Continuous ? "continuous" : "discrete"; }

// The canonical shift pair: A has ones on the superdiagonal, b = e_n.
inline Matrix shift_matrix(std::size_t n) {
    Matrix a(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = 1;
    return a;
}

inline Matrix last_basis_vector(std::size_t n) {
    Matrix b(n, 1);
    b(n - 1, 0) = 1;
    return b;
}

inline bool is_brunovsky_pair(const Matrix& a, const Matrix& b) {
    return a.is_square() && b.rows() == a.rows() && b.cols() == 1 && a == shift_matrix(a.rows()) &&
           b == last_basis_vector(a.rows());
}

// Unchecked system data as read from a file. validate_system() reports what is
// wrong with it; QuadraticSystem is only constructible from data that passes.
struct RawSystem {
    Kind kind = Kind::Continuous;
    std::size_t n = 0;
    Matrix A;
    Matrix b;
    std::vector<Matrix> F;
    Matrix G;
    std::optional<Matrix> h;
};

inline std::vector<std::string> validate_system(const RawSystem& raw) {
    std::vector<std::string> report;
    const std::size_t n = raw.n;
    if (n == 0) {
        report.emplace_back("dimension n must be positive");
        return report;
    }
    auto shape = [&](const Matrix& m, std::size_t r, std::size_t c, const std::string& name) {
        if (m.rows() != r || m.cols() != c)
            report.push_back(name + " has shape " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected " + std::to_string(r) + "x" +
                             std::to_string(c));
    };
    shape(raw.A, n, n, "A");
    shape(raw.b, n, 1, "b");
    shape(raw.G, n, n, "G");
    if (raw.F.size() != n)
        report.push_back("expected n quadratic matrices, got " + std::to_string(raw.F.size()));
    for (std::size_t i = 0; i < raw.F.size(); ++i) {
        const std::string name = "F_" + std::to_string(i + 1);
        const std::size_t before = report.size();
        shape(raw.F[i], n, n, name);
        if (report.size() == before && !raw.F[i].is_symmetric()) report.push_back(name + " is not symmetric");
    }
    if (raw.kind == Kind::Continuous && raw.h) report.emplace_back("h forbidden for continuous kind");
    if (raw.kind == Kind::Discrete) {
        if (!raw.h)
            report.emplace_back("h required for discrete kind");
        else
            shape(*raw.h, n, 1, "h");
    }
    return report;
}

// A single-input quadratic control system truncated at degree two:
//   continuous  xi' = A xi + b mu + F(xi) + G xi mu
//   discrete    xi+ = A xi + b mu + F(xi) + G xi mu + h mu^2
// where F(xi)_i = xi^T F_i xi.
class QuadraticSystem {
public:
    QuadraticSystem(Kind kind, Matrix A, Matrix b, std::vector<SymMatrix> F, Matrix G,
                    std::optional<Matrix> h = std::nullopt)
        : kind_(kind), n_(A.rows()), A_(std::move(A)), b_(std::move(b)), F_(std::move(F)),
          G_(std::move(G)), h_(std::move(h)) {
        RawSystem raw{kind_, n_, A_, b_, {}, G_, h_};
        for (const auto& f : F_) raw.F.push_back(f.to_matrix());
        const auto report = validate_system(raw);
        if (!report.empty()) throw validation_error(report.front());
    }

    // Builds from file data. Asymmetric F_i are rejected unless symmetrize is set.
    static QuadraticSystem from_raw(const RawSystem& raw, bool symmetrize = false) {
        RawSystem checked = raw;
        if (symmetrize)
            for (auto& f : checked.F)
                if (f.is_square()) f = SymMatrix::symmetrize(f).to_matrix();
        const auto report = validate_system(checked);
        if (!report.empty()) {
            std::string msg;
            for (const auto& line : report) msg += (msg.empty() ? "" : "; ") + line;
            throw validation_error(msg);
        }
        std::vector<SymMatrix> F;
        for (const auto& f : checked.F) F.push_back(SymMatrix::from_matrix(f));
        return QuadraticSystem(checked.kind, checked.A, checked.b, std::move(F), checked.G, checked.h);
    }

    // Linear part (shift, e_n), all quadratic data zero.
    static QuadraticSystem linear_brunovsky(Kind kind, std::size_t n) {
        std::vector<SymMatrix> F(n, SymMatrix(n));
        std::optional<Matrix> h;
        if (kind == Kind::Discrete) h = Matrix(n, 1);
        return QuadraticSystem(kind, shift_matrix(n), last_basis_vector(n), std::move(F), Matrix(n, n), h);
    }

    Kind kind() const noexcept { return kind_; }
    std::size_t n() const noexcept { return n_; }
    const Matrix& A() const noexcept { return A_; }
    const Matrix& b() const noexcept { return b_; }
    const std::vector<SymMatrix>& F() const noexcept { return F_; }
    // 1-based, matching the usual F_1..F_n labelling.
    const SymMatrix& F(std::size_t i) const { return F_.at(i - 1); }
    const Matrix& G() const noexcept { return G_; }
    const std::optional<Matrix>& h() const noexcept { return h_; }

    bool has_brunovsky_linear_part() const { return is_brunovsky_pair(A_, b_); }

    RawSystem to_raw() const {
        RawSystem raw{kind_, n_, A_, b_, {}, G_, h_};
        for (const auto& f : F_) raw.F.push_back(f.to_matrix());
        return raw;
    }

    friend bool operator==(const QuadraticSystem& a, const QuadraticSystem& b) {
        return a.kind_ == b.kind_ && a.A_ == b.A_ && a.b_ == b.b_ && a.F_ == b.F_ && a.G_ == b.G_ &&
               a.h_ == b.h_;
    }

private:
    Kind kind_;
    std::size_t n_;
    Matrix A_;
    Matrix b_;
    std::vector<SymMatrix> F_;
    Matrix G_;
    std::optional<Matrix> h_;
};

// Nonzero coefficients among the distinct monomials x_i x_j (i <= j) of every
// equation, plus nonzero bilinear entries of G and, for discrete systems, of h.
inline std::size_t count_nonzero_quadratic_terms(const QuadraticSystem& sys) {
    std::size_t count = sys.G().count_nonzero();
    for (const auto& f : sys.F()) count += f.count_nonzero_upper();
    if (sys.h()) count += sys.h()->count_nonzero();
    return count;
}

// Quadratic change of coordinates and feedback
//   xi = x + (x^T P_1 x, ..., x^T P_n x),   mu = nu - x^T Q x - r x nu.
// Discrete systems and both normal-form algorithms use r = 0.
struct QuadraticTransform {
    std::vector<SymMatrix> P;
    SymMatrix Q;
    Matrix r;

    static QuadraticTransform identity(std::size_t n) {
        return {std::vector<SymMatrix>(n, SymMatrix(n)), SymMatrix(n), Matrix(1, n)};
    }

    std::size_t n() const noexcept { return Q.dim(); }

    void check(std::size_t n) const {
        if (P.size() != n || Q.dim() != n || r.rows() != 1 || r.cols() != n)
            throw dimension_mismatch("transform does not match system dimension " + std::to_string(n));
        for (const auto& p : P)
            if (p.dim() != n) throw dimension_mismatch("transform P_i has wrong dimension");
    }

    bool is_identity() const {
        for (const auto& p : P)
            if (!p.is_zero()) return false;
        return Q.is_zero() && r.is_zero();
    }

    friend bool operator==(const QuadraticTransform&, const QuadraticTransform&) = default;
};

// Linear change of coordinates and feedback  xi = T x,  mu = u + x^T v.
struct LinearTransform {
    Matrix T;
    Matrix v;

    static LinearTransform identity(std::size_t n) { return {Matrix::identity(n), Matrix(n, 1)}; }

    friend bool operator==(const LinearTransform&, const LinearTransform&) = default;
};

// Composition "outer after inner": applying `inner` and then `outer` equals
// applying compose(outer, inner) once.
inline LinearTransform compose(const LinearTransform& outer, const LinearTransform& inner) {
    return {inner.T * outer.T, outer.v + outer.T.transpose() * inner.v};
}

enum class FormType { Linearized, TypeI, TypeII, DiscreteBilinear };

inline std::string_view to_string(FormType f) {
    switch (f) {
        case FormType::Linearized: return "linearized";
        case FormType::TypeI: return "type1";
        case FormType::TypeII: return "type2";
        case FormType::DiscreteBilinear: return "discrete-bilinear";
    }
    return "unknown";
}

struct NormalFormResult {
    QuadraticSystem normal;
    QuadraticTransform transform;
    FormType form_type;
    std::size_t nonzero_quadratic_terms;
};

}  // namespace quadform
