#include "cnc/lp.hpp"

namespace cnc {

template LpOutcome<double> solve_lp<double>(std::vector<std::vector<double>>,
                                            std::vector<double>,
                                            const std::vector<double>&,
                                            std::size_t);
template LpOutcome<Rational> solve_lp<Rational>(
    std::vector<std::vector<Rational>>, std::vector<Rational>,
    const std::vector<Rational>&, std::size_t);

}  // namespace cnc
