#include "padicreg/kernels.hpp"

namespace padicreg::kernels {

FormSeries wedge_reference(const FormSeries& f, const FormSeries& g) {
  f.require_compatible(g, "wedge");
  FormSeries r(f.s(), f.matrix_size(), f.params(), f.degree_cap(), std::min(f.level(), g.level()));
  const int vars = f.variables();
  for (const auto& [ka, a] : f.terms()) {
    for (const auto& [kb, b] : g.terms()) {
      const int sign = shuffle_sign(ka.wedge, kb.wedge);
      if (sign == 0 || ka.degree() + kb.degree() > f.degree_cap()) continue;
      FormKey key;
      for (int i = 0; i < vars; ++i)
        key.exponents[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(
            ka.exponents[static_cast<std::size_t>(i)] + kb.exponents[static_cast<std::size_t>(i)]);
      key.wedge = ka.wedge | kb.wedge;
      const OMatrix prod = a * b;
      r.add_term(key, sign > 0 ? prod : -prod);
    }
  }
  return r;
}

}  // namespace padicreg::kernels
