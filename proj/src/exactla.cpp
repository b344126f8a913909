#include "soclelab/exactla.hpp"

#include <algorithm>
#include <cassert>

#include "soclelab/errors.hpp"
#include "soclelab/limits.hpp"

namespace soclelab {

Mat::Mat(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Mat::Mat(Field field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw InputError("matrix entry count does not match its shape");
    for (Elem e : data_)
        if (e >= field_.q()) throw InputError("matrix entry outside its field");
}

Mat Mat::identity(const Field& field, std::size_t n) {
    Mat m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Mat Mat::from_rows(const Field& field, std::size_t cols, const std::vector<Vec>& rows) {
    Mat m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw InputError("ragged matrix rows");
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

Mat Mat::from_ints(const Field& field, const std::vector<std::vector<long long>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Mat m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw InputError("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, field.from_int(rows[r][c]));
    }
    return m;
}

Mat Mat::unit(const Field& field, std::size_t rows, std::size_t cols, std::size_t r, std::size_t c) {
    Mat m(field, rows, cols);
    m.set(r, c, 1);
    return m;
}

Vec Mat::col_vec(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

bool Mat::is_zero() const noexcept { return soclelab::is_zero(data_); }

Mat Mat::transpose() const {
    Mat t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    return t;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw PreconditionError("matrix product shape mismatch");
    Mat out(field_, rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Elem a = at(r, k);
            if (a != 0) axpy(field_, out.row(r), a, o.row(k));
        }
    return out;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("matrix sum shape mismatch");
    Mat out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.add(data_[i], o.data_[i]);
    return out;
}

Mat Mat::operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("matrix difference shape mismatch");
    Mat out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.sub(data_[i], o.data_[i]);
    return out;
}

Mat Mat::scaled(Elem s) const {
    Mat out = *this;
    for (auto& e : out.data_) e = field_.mul(e, s);
    return out;
}

Vec Mat::apply(std::span<const Elem> v) const {
    if (v.size() != cols_) throw PreconditionError("matrix-vector shape mismatch");
    Vec out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = dot(field_, row(r), v);
    return out;
}

Mat Mat::vstack(const Mat& below) const {
    if (cols_ != below.cols_) throw PreconditionError("vstack column mismatch");
    Mat out(field_, rows_ + below.rows_, cols_);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return out;
}

Mat Mat::hstack(const Mat& right) const {
    if (rows_ != right.rows_) throw PreconditionError("hstack row mismatch");
    Mat out(field_, rows_, cols_ + right.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::copy(row(r).begin(), row(r).end(), out.row(r).begin());
        std::copy(right.row(r).begin(), right.row(r).end(), out.row(r).begin() + static_cast<std::ptrdiff_t>(cols_));
    }
    return out;
}

Mat Mat::row_block(std::size_t r0, std::size_t r1) const {
    Mat out(field_, r1 - r0, cols_);
    std::copy(data_.begin() + static_cast<std::ptrdiff_t>(r0 * cols_),
              data_.begin() + static_cast<std::ptrdiff_t>(r1 * cols_), out.data_.begin());
    return out;
}

void axpy(const Field& f, std::span<Elem> y, Elem a, std::span<const Elem> x) {
    if (a == 0) return;
    if (f.is_binary()) {
        for (std::size_t i = 0; i < y.size(); ++i) y[i] ^= x[i];
        return;
    }
    for (std::size_t i = 0; i < y.size(); ++i)
        if (x[i] != 0) y[i] = f.add(y[i], f.mul(a, x[i]));
}

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
    Elem s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

bool is_zero(std::span<const Elem> v) {
    return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

Rref rref_generic(const Mat& m) {
    const Field& f = m.field();
    Mat a = m;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t pr = r;
        while (pr < a.rows() && a.at(pr, c) == 0) ++pr;
        if (pr == a.rows()) continue;
        if (pr != r)
            for (std::size_t k = 0; k < a.cols(); ++k) {
                const Elem t = a.at(r, k);
                a.set(r, k, a.at(pr, k));
                a.set(pr, k, t);
            }
        const Elem inv = f.inv(a.at(r, c));
        for (auto& e : a.row(r)) e = f.mul(e, inv);
        for (std::size_t o = 0; o < a.rows(); ++o) {
            if (o == r) continue;
            const Elem factor = a.at(o, c);
            if (factor != 0) axpy(f, a.row(o), f.neg(factor), a.row(r));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

Rref rref_packed(const Mat& m) {
    if (!m.field().is_binary()) throw PreconditionError("bit-packed elimination needs q = 2");
    const std::size_t words = (m.cols() + 63) / 64;
    std::vector<std::uint64_t> bits(m.rows() * words, 0);
    auto word = [&](std::size_t r, std::size_t w) -> std::uint64_t& { return bits[r * words + w]; };
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.at(r, c) != 0) word(r, c / 64) |= std::uint64_t{1} << (c % 64);

    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        std::size_t pr = r;
        while (pr < m.rows() && (word(pr, w) & bit) == 0) ++pr;
        if (pr == m.rows()) continue;
        if (pr != r)
            for (std::size_t k = 0; k < words; ++k) std::swap(word(r, k), word(pr, k));
        for (std::size_t o = 0; o < m.rows(); ++o)
            if (o != r && (word(o, w) & bit) != 0)
                for (std::size_t k = w; k < words; ++k) word(o, k) ^= word(r, k);
        pivots.push_back(c);
        ++r;
    }
    Mat out(m.field(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if ((word(i, c / 64) >> (c % 64)) & 1u) out.set(i, c, 1);
    return {std::move(out), std::move(pivots)};
}

Rref rref(const Mat& m) { return m.field().is_binary() ? rref_packed(m) : rref_generic(m); }

std::size_t rank(const Mat& m) { return rref(m).rank(); }

// --- Subspace -------------------------------------------------------------

Subspace::Subspace(Field field, std::size_t ambient_dim) : basis_(std::move(field), 0, ambient_dim) {}

Subspace::Subspace(Rref r) : basis_(r.reduced.row_block(0, r.rank())), pivots_(std::move(r.pivots)) {}

Subspace Subspace::full(const Field& field, std::size_t n) { return Subspace(rref(Mat::identity(field, n))); }

Subspace Subspace::span(const Field& field, std::size_t ambient_dim, const std::vector<Vec>& vectors) {
    return Subspace(rref(Mat::from_rows(field, ambient_dim, vectors)));
}

Subspace Subspace::row_space(const Mat& m) { return Subspace(rref(m)); }

Subspace Subspace::column_space(const Mat& m) { return Subspace(rref(m.transpose())); }

std::vector<Vec> Subspace::vectors() const {
    std::vector<Vec> out;
    out.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(vector(i));
    return out;
}

Vec Subspace::reduce(std::span<const Elem> v) const {
    if (v.size() != ambient_dim()) throw PreconditionError("vector length does not match ambient dimension");
    Vec out(v.begin(), v.end());
    const Field& f = field();
    for (std::size_t i = 0; i < dim(); ++i) {
        const Elem c = out[pivots_[i]];
        if (c != 0) axpy(f, out, f.neg(c), basis_.row(i));
    }
    return out;
}

bool Subspace::contains(std::span<const Elem> v) const { return soclelab::is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_dim() != ambient_dim()) throw PreconditionError("subspaces live in different ambient spaces");
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

Vec Subspace::coordinates(std::span<const Elem> v) const {
    if (!contains(v)) throw PreconditionError("vector does not lie in the subspace");
    Vec c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
    return c;
}

Vec Subspace::combine(std::span<const Elem> c) const {
    if (c.size() != dim()) throw PreconditionError("coefficient count does not match subspace dimension");
    Vec out(ambient_dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i) axpy(field(), out, c[i], basis_.row(i));
    return out;
}

Subspace Subspace::operator+(const Subspace& o) const {
    if (o.ambient_dim() != ambient_dim()) throw PreconditionError("subspaces live in different ambient spaces");
    return Subspace(rref(basis_.vstack(o.basis_)));
}

Subspace Subspace::intersect(const Subspace& o) const {
    if (o.ambient_dim() != ambient_dim()) throw PreconditionError("subspaces live in different ambient spaces");
    if (dim() == 0 || o.dim() == 0) return Subspace(field(), ambient_dim());
    return (annihilator() + o.annihilator()).annihilator();
}

Subspace Subspace::annihilator() const {
    if (dim() == 0) return full(field(), ambient_dim());
    return kernel(basis_);
}

Subspace Subspace::image_under(const Mat& m) const {
    if (m.cols() != ambient_dim()) throw PreconditionError("map domain does not match ambient dimension");
    std::vector<Vec> imgs;
    imgs.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) imgs.push_back(m.apply(basis_.row(i)));
    return span(field(), m.rows(), imgs);
}

std::vector<Vec> Subspace::points() const {
    if (dim() == 0) throw PreconditionError("the zero subspace has no projective points");
    std::vector<Vec> out;
    for (const auto& c : projective_points(field(), dim())) out.push_back(combine(c));
    return out;
}

std::vector<Subspace> Subspace::hyperplanes() const {
    if (dim() == 0) throw PreconditionError("the zero subspace has no hyperplanes");
    std::vector<Subspace> out;
    for (const auto& phi : projective_points(field(), dim())) {
        const Subspace coeff = kernel(Mat::from_rows(field(), dim(), {phi}));
        std::vector<Vec> vs;
        for (std::size_t i = 0; i < coeff.dim(); ++i) vs.push_back(combine(coeff.basis_.row(i)));
        out.push_back(span(field(), ambient_dim(), vs));
    }
    return out;
}

std::vector<Subspace> Subspace::subspaces(std::size_t k) const {
    std::vector<Subspace> out;
    for (const auto& coeff : enumerate_subspaces(field(), dim(), k)) {
        std::vector<Vec> vs;
        for (std::size_t i = 0; i < coeff.dim(); ++i) vs.push_back(combine(coeff.basis_.row(i)));
        out.push_back(span(field(), ambient_dim(), vs));
    }
    return out;
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) noexcept {
    if (auto c = a.ambient_dim() <=> b.ambient_dim(); c != 0) return c;
    if (auto c = a.dim() <=> b.dim(); c != 0) return c;
    const auto& x = a.basis_.entries();
    const auto& y = b.basis_.entries();
    return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
}

Subspace kernel(const Mat& m) {
    const Field& f = m.field();
    const Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < r.rank(); ++i) v[r.pivots[i]] = f.neg(r.reduced.at(i, free));
        basis.push_back(std::move(v));
    }
    return Subspace::span(f, m.cols(), basis);
}

std::optional<Vec> solve(const Mat& m, std::span<const Elem> b) {
    const Field& f = m.field();
    Mat aug(f, m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug.set(r, c, m.at(r, c));
        aug.set(r, m.cols(), b[r]);
    }
    const Rref red = rref(aug);
    Vec x(m.cols(), 0);
    for (std::size_t i = 0; i < red.rank(); ++i) {
        if (red.pivots[i] == m.cols()) return std::nullopt;
        x[red.pivots[i]] = red.reduced.at(i, m.cols());
    }
    return x;
}

Vec vector_from_index(const Field& f, std::size_t n, std::uint64_t index) {
    Vec v(n);
    for (std::size_t k = 0; k < n; ++k) {
        v[k] = static_cast<Elem>(index % f.q());
        index /= f.q();
    }
    return v;
}

std::vector<Vec> projective_points(const Field& f, std::size_t d) {
    std::vector<Vec> out;
    const std::uint64_t total = checked_pow(f.q(), d);
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        Vec v = vector_from_index(f, d, idx);
        auto lead = std::find_if(v.begin(), v.end(), [](Elem e) { return e != 0; });
        if (*lead == 1) out.push_back(std::move(v));
    }
    return out;
}

std::uint64_t gaussian_binomial(std::uint64_t q, unsigned n, unsigned k) {
    if (k > n) return 0;
    // prod_{i<k} (q^{n-i} - 1) / (q^{i+1} - 1); every partial product is itself a
    // Gaussian binomial, so each division is exact.
    std::uint64_t result = 1;
    for (unsigned i = 0; i < k; ++i)
        result = result * (checked_pow(q, n - i) - 1) / (checked_pow(q, i + 1) - 1);
    return result;
}

std::vector<Subspace> enumerate_subspaces(const Field& f, std::size_t n, std::size_t k) {
    std::vector<Subspace> out;
    if (k > n) return out;
    if (k == 0) {
        out.emplace_back(f, n);
        return out;
    }
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    while (true) {
        // Free positions: (row i, column c) with c > piv[i] and c not a pivot column.
        std::vector<bool> is_pivot(n, false);
        for (auto p : piv) is_pivot[p] = true;
        std::vector<std::pair<std::size_t, std::size_t>> free;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t c = piv[i] + 1; c < n; ++c)
                if (!is_pivot[c]) free.emplace_back(i, c);
        const std::uint64_t count = checked_pow(f.q(), free.size());
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Mat b(f, k, n);
            for (std::size_t i = 0; i < k; ++i) b.set(i, piv[i], 1);
            std::uint64_t rem = idx;
            for (const auto& [i, c] : free) {
                b.set(i, c, static_cast<Elem>(rem % f.q()));
                rem /= f.q();
            }
            out.push_back(Subspace::row_space(b));
        }
        // Next k-combination of {0..n-1} in lexicographic order.
        std::size_t i = k;
        while (i > 0 && piv[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++piv[i - 1];
        for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
    return out;
}

std::size_t SubspaceHash::operator()(const Subspace& s) const noexcept {
    std::size_t h = 1469598103934665603ull ^ s.ambient_dim();
    for (Elem e : s.basis().entries()) h = (h ^ e) * 1099511628211ull;
    return h ^ (s.dim() << 1);
}

}  // namespace soclelab
