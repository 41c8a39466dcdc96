#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hypermode {

/// One monomial coeff * prod_k s_k^{powers[k]}.
struct Term {
    double coeff = 0.0;
    std::vector<int> powers;

    bool operator==(const Term&) const = default;
};

/// Multivariate polynomial over a fixed number of state components.
///
/// The term list is kept exactly as constructed: no reordering or merging of
/// like terms unless simplified() is called. Parsing and printing rely on this
/// to round-trip documents term for term.
class Polynomial {
public:
    explicit Polynomial(int nvars = 0) : nvars_(nvars) {}
    Polynomial(int nvars, std::vector<Term> terms);

    static Polynomial constant(int nvars, double value);
    static Polynomial variable(int nvars, int index, double coeff = 1.0);

    int nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }

    double operator()(std::span<const double> state) const;
    double operator()(const Eigen::VectorXd& state) const;

    Polynomial partial(int index) const;
    int total_degree() const;
    bool is_constant() const { return total_degree() == 0; }

    /// Merge terms with equal exponents and drop exact zeros.
    Polynomial simplified() const;

    /// Re-express over new_nvars variables; old variable i becomes var_map[i].
    Polynomial reindexed(int new_nvars, std::span<const int> var_map) const;

    Polynomial& operator+=(const Polynomial& other);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(double s, Polynomial p);

    bool operator==(const Polynomial&) const = default;

private:
    int nvars_;
    std::vector<Term> terms_;
};

/// rows x cols matrix of polynomials in `nvars` state components.
class PolyMatrixFn {
public:
    PolyMatrixFn() = default;
    PolyMatrixFn(int rows, int cols, int nvars);
    PolyMatrixFn(int rows, int cols, int nvars, std::vector<Polynomial> entries);

    static PolyMatrixFn constant(const Eigen::MatrixXd& value, int nvars);
    static PolyMatrixFn identity(int size, int nvars);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nvars() const { return nvars_; }

    const Polynomial& operator()(int i, int j) const { return entries_[index(i, j)]; }
    Polynomial& operator()(int i, int j) { return entries_[index(i, j)]; }
    const std::vector<Polynomial>& entries() const { return entries_; }

    Eigen::MatrixXd eval(std::span<const double> state) const;
    Eigen::MatrixXd eval(const Eigen::VectorXd& state) const;

    PolyMatrixFn partial(int index) const;
    int total_degree() const;
    bool is_constant() const { return total_degree() == 0; }

    PolyMatrixFn simplified() const;
    PolyMatrixFn transposed() const;
    PolyMatrixFn reindexed(int new_nvars, std::span<const int> var_map) const;

    /// Copy `block` into this matrix with its (0,0) entry at (row, col).
    void set_block(int row, int col, const PolyMatrixFn& block);

    PolyMatrixFn& operator+=(const PolyMatrixFn& other);
    friend PolyMatrixFn operator+(PolyMatrixFn a, const PolyMatrixFn& b) { return a += b; }
    friend PolyMatrixFn operator*(const PolyMatrixFn& a, const PolyMatrixFn& b);
    friend PolyMatrixFn operator*(double s, PolyMatrixFn m);

    bool operator==(const PolyMatrixFn&) const = default;

private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * cols_ + j; }

    int rows_ = 0;
    int cols_ = 0;
    int nvars_ = 0;
    std::vector<Polynomial> entries_;
};

}  // namespace hypermode
