#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "soclelab/gf.hpp"

namespace soclelab {

using Vec = std::vector<Elem>;

/// Dense row-major matrix over a finite field.
class Mat {
public:
    Mat(Field field, std::size_t rows, std::size_t cols);
    Mat(Field field, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

    static Mat identity(const Field& field, std::size_t n);
    static Mat from_rows(const Field& field, std::size_t cols, const std::vector<Vec>& rows);
    /// Entries reduced into the prime subfield; convenient for literals.
    static Mat from_ints(const Field& field, const std::vector<std::vector<long long>>& rows);
    /// n x n matrix with a single 1 at (r, c).
    static Mat unit(const Field& field, std::size_t rows, std::size_t cols, std::size_t r, std::size_t c);

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const std::vector<Elem>& entries() const noexcept { return data_; }

    Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Elem v) { data_[r * cols_ + c] = v; }
    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    Vec row_vec(std::size_t r) const { return {data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_}; }
    Vec col_vec(std::size_t c) const;

    bool is_zero() const noexcept;
    Mat transpose() const;
    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat scaled(Elem s) const;
    /// M v for a column vector v of length cols().
    Vec apply(std::span<const Elem> v) const;
    Mat vstack(const Mat& below) const;
    Mat hstack(const Mat& right) const;
    /// Rows [r0, r1).
    Mat row_block(std::size_t r0, std::size_t r1) const;

    friend bool operator==(const Mat& a, const Mat& b) noexcept {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ && a.field_ == b.field_;
    }

private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<Elem> data_;
};

struct Rref {
    Mat reduced;                      // same shape as the input, zero rows last
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
    std::size_t rank() const noexcept { return pivots.size(); }
};

/// Reduced row echelon form. Dispatches to a bit-packed kernel over F_2.
Rref rref(const Mat& m);
Rref rref_generic(const Mat& m);
Rref rref_packed(const Mat& m);
std::size_t rank(const Mat& m);

/// y += a * x.
void axpy(const Field& f, std::span<Elem> y, Elem a, std::span<const Elem> x);
Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b);
bool is_zero(std::span<const Elem> v);

/// A subspace of F_q^n held by its canonical RREF basis: equal subspaces have
/// identical bases, so comparison and hashing are structural.
class Subspace {
public:
    Subspace(Field field, std::size_t ambient_dim);

    static Subspace full(const Field& field, std::size_t n);
    static Subspace span(const Field& field, std::size_t ambient_dim, const std::vector<Vec>& vectors);
    static Subspace row_space(const Mat& m);
    static Subspace column_space(const Mat& m);

    const Field& field() const noexcept { return basis_.field(); }
    std::size_t ambient_dim() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }
    bool is_zero() const noexcept { return dim() == 0; }
    const Mat& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    Vec vector(std::size_t i) const { return basis_.row_vec(i); }
    std::vector<Vec> vectors() const;

    /// v minus its components along the pivots; zero iff v lies in the subspace.
    Vec reduce(std::span<const Elem> v) const;
    bool contains(std::span<const Elem> v) const;
    bool contains(const Subspace& other) const;
    /// Coefficients of v in the RREF basis; v must lie in the subspace.
    Vec coordinates(std::span<const Elem> v) const;
    /// sum_i c_i * basis_i.
    Vec combine(std::span<const Elem> c) const;

    Subspace operator+(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;
    /// {phi : phi . v = 0 for all v}, as a subspace of the same coordinate space.
    Subspace annihilator() const;
    /// Image under a linear map given as a matrix acting on column vectors.
    Subspace image_under(const Mat& m) const;

    /// One representative per 1-dimensional subspace: (q^d - 1)/(q - 1) vectors.
    std::vector<Vec> points() const;
    /// All codimension-1 subspaces, (q^d - 1)/(q - 1) of them.
    std::vector<Subspace> hyperplanes() const;
    /// All k-dimensional subspaces contained in this one.
    std::vector<Subspace> subspaces(std::size_t k) const;

    friend bool operator==(const Subspace& a, const Subspace& b) noexcept { return a.basis_ == b.basis_; }
    friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) noexcept;

private:
    explicit Subspace(Rref r);
    Mat basis_;
    std::vector<std::size_t> pivots_;
};

/// {v : m v = 0}.
Subspace kernel(const Mat& m);
/// Some x with m x = b, or nullopt when the system is inconsistent.
std::optional<Vec> solve(const Mat& m, std::span<const Elem> b);

/// Vector with index-th place-value digits in base q (the enumeration order of F_q^n).
Vec vector_from_index(const Field& f, std::size_t n, std::uint64_t index);
/// Nonzero vectors of F_q^d whose first nonzero entry is 1, in increasing index order.
std::vector<Vec> projective_points(const Field& f, std::size_t d);
/// Number of k-dimensional subspaces of F_q^n.
std::uint64_t gaussian_binomial(std::uint64_t q, unsigned n, unsigned k);
/// Every k-dimensional subspace of F_q^n in a fixed order (pivot sets lexicographic,
/// then free entries by index). Canonical by construction.
std::vector<Subspace> enumerate_subspaces(const Field& f, std::size_t n, std::size_t k);

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const noexcept;
};

}  // namespace soclelab
