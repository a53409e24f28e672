#include "qm/biform.hpp"

namespace qm {

std::string Bidegree::to_string() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

template class BiForm<PrimeField>;
template class BiForm<RationalField>;

}  // namespace qm
