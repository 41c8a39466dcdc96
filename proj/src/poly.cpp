#include "hypermode/poly.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "hypermode/errors.hpp"

namespace hypermode {

namespace {

double int_pow(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

void check_term(const Term& t, int nvars) {
    if (static_cast<int>(t.powers.size()) != nvars) {
        throw DimensionError("term has " + std::to_string(t.powers.size()) +
                             " exponents, expected " + std::to_string(nvars));
    }
    for (int p : t.powers) {
        if (p < 0) throw ValidationError("negative exponent in polynomial term");
    }
}

}  // namespace

Polynomial::Polynomial(int nvars, std::vector<Term> terms) : nvars_(nvars), terms_(std::move(terms)) {
    for (const auto& t : terms_) check_term(t, nvars_);
}

Polynomial Polynomial::constant(int nvars, double value) {
    return Polynomial(nvars, {Term{value, std::vector<int>(nvars, 0)}});
}

Polynomial Polynomial::variable(int nvars, int index, double coeff) {
    if (index < 0 || index >= nvars) throw DimensionError("variable index out of range");
    std::vector<int> powers(nvars, 0);
    powers[index] = 1;
    return Polynomial(nvars, {Term{coeff, std::move(powers)}});
}

double Polynomial::operator()(std::span<const double> state) const {
    if (static_cast<int>(state.size()) != nvars_) {
        throw DimensionError("state has length " + std::to_string(state.size()) + ", polynomial expects " +
                             std::to_string(nvars_));
    }
    double sum = 0.0;
    for (const auto& t : terms_) {
        double v = t.coeff;
        for (int k = 0; k < nvars_; ++k) {
            if (t.powers[k] != 0) v *= int_pow(state[k], t.powers[k]);
        }
        sum += v;
    }
    return sum;
}

double Polynomial::operator()(const Eigen::VectorXd& state) const {
    return (*this)(std::span<const double>(state.data(), static_cast<std::size_t>(state.size())));
}

Polynomial Polynomial::partial(int index) const {
    if (index < 0 || index >= nvars_) throw DimensionError("partial: variable index out of range");
    Polynomial out(nvars_);
    for (const auto& t : terms_) {
        if (t.powers[index] == 0) continue;
        Term d = t;
        d.coeff *= t.powers[index];
        d.powers[index] -= 1;
        out.terms_.push_back(std::move(d));
    }
    return out;
}

int Polynomial::total_degree() const {
    int deg = 0;
    for (const auto& t : terms_) {
        int s = 0;
        for (int p : t.powers) s += p;
        deg = std::max(deg, s);
    }
    return deg;
}

Polynomial Polynomial::simplified() const {
    std::map<std::vector<int>, double> acc;
    std::vector<std::vector<int>> order;
    for (const auto& t : terms_) {
        auto [it, inserted] = acc.try_emplace(t.powers, 0.0);
        if (inserted) order.push_back(t.powers);
        it->second += t.coeff;
    }
    Polynomial out(nvars_);
    for (const auto& p : order) {
        double c = acc[p];
        if (c != 0.0) out.terms_.push_back(Term{c, p});
    }
    return out;
}

Polynomial Polynomial::reindexed(int new_nvars, std::span<const int> var_map) const {
    if (static_cast<int>(var_map.size()) != nvars_) throw DimensionError("reindex map has wrong length");
    Polynomial out(new_nvars);
    for (const auto& t : terms_) {
        Term r{t.coeff, std::vector<int>(new_nvars, 0)};
        for (int k = 0; k < nvars_; ++k) {
            if (var_map[k] < 0 || var_map[k] >= new_nvars) throw DimensionError("reindex target out of range");
            r.powers[var_map[k]] += t.powers[k];
        }
        out.terms_.push_back(std::move(r));
    }
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    if (other.nvars_ != nvars_) throw DimensionError("adding polynomials over different variable counts");
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw DimensionError("multiplying polynomials over different variable counts");
    Polynomial out(a.nvars_);
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            Term t{ta.coeff * tb.coeff, ta.powers};
            for (int k = 0; k < a.nvars_; ++k) t.powers[k] += tb.powers[k];
            out.terms_.push_back(std::move(t));
        }
    }
    return out;
}

Polynomial operator*(double s, Polynomial p) {
    for (auto& t : p.terms_) t.coeff *= s;
    return p;
}

// ---------------------------------------------------------------------------

PolyMatrixFn::PolyMatrixFn(int rows, int cols, int nvars)
    : rows_(rows), cols_(cols), nvars_(nvars),
      entries_(static_cast<std::size_t>(rows) * cols, Polynomial(nvars)) {
    if (rows <= 0 || cols <= 0) throw ValidationError("matrix function must have positive shape");
}

PolyMatrixFn::PolyMatrixFn(int rows, int cols, int nvars, std::vector<Polynomial> entries)
    : rows_(rows), cols_(cols), nvars_(nvars), entries_(std::move(entries)) {
    if (rows <= 0 || cols <= 0) throw ValidationError("matrix function must have positive shape");
    if (entries_.size() != static_cast<std::size_t>(rows) * cols) {
        throw DimensionError("matrix function expects " + std::to_string(rows * cols) + " entries, got " +
                             std::to_string(entries_.size()));
    }
    for (const auto& e : entries_) {
        if (e.nvars() != nvars) throw DimensionError("matrix entry over wrong number of variables");
    }
}

PolyMatrixFn PolyMatrixFn::constant(const Eigen::MatrixXd& value, int nvars) {
    PolyMatrixFn out(static_cast<int>(value.rows()), static_cast<int>(value.cols()), nvars);
    for (int i = 0; i < out.rows_; ++i) {
        for (int j = 0; j < out.cols_; ++j) {
            if (value(i, j) != 0.0) out(i, j) = Polynomial::constant(nvars, value(i, j));
        }
    }
    return out;
}

PolyMatrixFn PolyMatrixFn::identity(int size, int nvars) {
    return constant(Eigen::MatrixXd::Identity(size, size), nvars);
}

Eigen::MatrixXd PolyMatrixFn::eval(std::span<const double> state) const {
    if (static_cast<int>(state.size()) != nvars_) {
        throw DimensionError("state has length " + std::to_string(state.size()) + ", matrix function expects " +
                             std::to_string(nvars_));
    }
    Eigen::MatrixXd out(rows_, cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j)(state);
    }
    return out;
}

Eigen::MatrixXd PolyMatrixFn::eval(const Eigen::VectorXd& state) const {
    return eval(std::span<const double>(state.data(), static_cast<std::size_t>(state.size())));
}

PolyMatrixFn PolyMatrixFn::partial(int index) const {
    PolyMatrixFn out(rows_, cols_, nvars_);
    for (std::size_t e = 0; e < entries_.size(); ++e) out.entries_[e] = entries_[e].partial(index);
    return out;
}

int PolyMatrixFn::total_degree() const {
    int deg = 0;
    for (const auto& e : entries_) deg = std::max(deg, e.total_degree());
    return deg;
}

PolyMatrixFn PolyMatrixFn::simplified() const {
    PolyMatrixFn out = *this;
    for (auto& e : out.entries_) e = e.simplified();
    return out;
}

PolyMatrixFn PolyMatrixFn::transposed() const {
    PolyMatrixFn out(cols_, rows_, nvars_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
}

PolyMatrixFn PolyMatrixFn::reindexed(int new_nvars, std::span<const int> var_map) const {
    PolyMatrixFn out(rows_, cols_, new_nvars);
    for (std::size_t e = 0; e < entries_.size(); ++e) out.entries_[e] = entries_[e].reindexed(new_nvars, var_map);
    return out;
}

void PolyMatrixFn::set_block(int row, int col, const PolyMatrixFn& block) {
    if (block.nvars_ != nvars_) throw DimensionError("set_block: variable count mismatch");
    if (row < 0 || col < 0 || row + block.rows_ > rows_ || col + block.cols_ > cols_) {
        throw DimensionError("set_block: block does not fit");
    }
    for (int i = 0; i < block.rows_; ++i) {
        for (int j = 0; j < block.cols_; ++j) (*this)(row + i, col + j) = block(i, j);
    }
}

PolyMatrixFn& PolyMatrixFn::operator+=(const PolyMatrixFn& other) {
    if (other.rows_ != rows_ || other.cols_ != cols_ || other.nvars_ != nvars_) {
        throw DimensionError("adding matrix functions of different shape");
    }
    for (std::size_t e = 0; e < entries_.size(); ++e) entries_[e] += other.entries_[e];
    return *this;
}

PolyMatrixFn operator*(const PolyMatrixFn& a, const PolyMatrixFn& b) {
    if (a.cols_ != b.rows_ || a.nvars_ != b.nvars_) throw DimensionError("matrix function product shape mismatch");
    PolyMatrixFn out(a.rows_, b.cols_, a.nvars_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int j = 0; j < b.cols_; ++j) {
            Polynomial acc(a.nvars_);
            for (int k = 0; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc.simplified();
        }
    }
    return out;
}

PolyMatrixFn operator*(double s, PolyMatrixFn m) {
    for (auto& e : m.entries_) e = s * std::move(e);
    return m;
}

}  // namespace hypermode
