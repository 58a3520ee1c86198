#include "cellform/homology.hpp"

#include <cstdint>
#include <optional>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace cellform {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// a*b - c*d, nullopt on overflow.
std::optional<std::int64_t> cross(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    std::int64_t ab = 0;
    std::int64_t cd = 0;
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &ab) || __builtin_mul_overflow(c, d, &cd) || __builtin_sub_overflow(ab, cd, &out))
        return std::nullopt;
    return out;
}

std::optional<BigInt> cross(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
    return a * b - c * d;
}

template <typename Int>
std::optional<int> bareiss_rank(const Eigen::MatrixXi& m) {
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a[i][j] = m(i, j);

    Int previous = 1;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i)
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[pivot], a[rank]);
        for (int i = rank + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j) {
                auto value = cross(a[rank][col], a[i][j], a[i][col], a[rank][j]);
                if (!value) return std::nullopt;
                a[i][j] = *value / previous;  // exact by Sylvester's identity
            }
            a[i][col] = 0;
        }
        previous = a[rank][col];
        ++rank;
    }
    return rank;
}

}  // namespace

int exact_rank(const Eigen::MatrixXi& matrix) {
    if (matrix.size() == 0) return 0;
    if (auto r = bareiss_rank<std::int64_t>(matrix)) return *r;
    return *bareiss_rank<BigInt>(matrix);
}

int betti_oracle(const CellComplex& complex, int p) {
    const int n = complex.dimension();
    if (p < 0 || p > n) return 0;
    const int rank_in = p >= 1 ? exact_rank(complex.boundary_matrix(p)) : 0;
    const int rank_out = p + 1 <= n ? exact_rank(complex.boundary_matrix(p + 1)) : 0;
    return complex.cell_count(p) - rank_in - rank_out;
}

std::vector<int> betti_numbers(const CellComplex& complex) {
    std::vector<int> b;
    for (int p = 0; p <= complex.dimension(); ++p) b.push_back(betti_oracle(complex, p));
    return b;
}

}  // namespace cellform
