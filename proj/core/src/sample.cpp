#include "coarsegrp/sample.hpp"

#include "coarsegrp/errors.hpp"

namespace cg::sample {

IntMatrix matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rng.uniform(-bound, bound));
  return m;
}

FgAbGroup group(Rng& rng, std::size_t max_free_rank, long max_exponent, std::size_t max_factors) {
  intlat::IntVector orders;
  const auto free_rank = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(max_free_rank)));
  for (std::size_t i = 0; i < free_rank; ++i) orders.emplace_back(0);
  if (max_exponent >= 2) {
    const auto k = rng.uniform(0, static_cast<long>(max_factors));
    for (long i = 0; i < k; ++i) orders.emplace_back(static_cast<long>(rng.uniform(2, max_exponent)));
  }
  return FgAbGroup::from_cyclic_orders(orders);
}

fgab::Element element(Rng& rng, const FgAbGroup& g, long bound) {
  fgab::Element x(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const Integer m = g.modulus(i);
    x[i] = m == 0 ? Integer(static_cast<long>(rng.uniform(-bound, bound)))
                  : Integer(static_cast<long>(rng.uniform(0, m.get_si() - 1)));
  }
  return x;
}

Hom hom(Rng& rng, const FgAbGroup& source, const FgAbGroup& target, long bound) {
  IntMatrix m(target.dim(), source.dim());
  for (std::size_t j = 0; j < source.dim(); ++j) {
    const Integer order = source.modulus(j);
    for (std::size_t i = 0; i < target.dim(); ++i) {
      const Integer mod = target.modulus(i);
      if (order == 0) {
        m(i, j) = mod == 0 ? Integer(static_cast<long>(rng.uniform(-bound, bound)))
                           : Integer(static_cast<long>(rng.uniform(0, mod.get_si() - 1)));
      } else if (mod != 0) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), order.get_mpz_t(), mod.get_mpz_t());
        const Integer step = mod / g;
        m(i, j) = step * static_cast<long>(rng.uniform(0, g.get_si() - 1));
      }
    }
  }
  return Hom(source, target, std::move(m));
}

Hom finitary_equivalence(Rng& rng, const FgAbGroup& source, const FgAbGroup& target, long bound) {
  if (source.free_rank() != target.free_rank())
    throw DomainError("a finitary equivalence needs equal free ranks");
  const std::size_t n = source.free_rank();
  for (int attempt = 0;; ++attempt) {
    Hom f = hom(rng, source, target, bound);
    IntMatrix block(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) block(i, j) = f.matrix()(i, j);
    if (intlat::rank(block) == n) return f;
    if (attempt > 64) {
      // Fall back to the identity on the free block.
      IntMatrix m = f.matrix();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = i == j ? 1 : 0;
      return Hom(source, target, std::move(m));
    }
  }
}

}  // namespace cg::sample
