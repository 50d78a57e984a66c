// Internal: concrete engine factories.
#ifndef COSAT_SRC_ENGINES_HPP_
#define COSAT_SRC_ENGINES_HPP_

#include <memory>

#include "cosat/errors.hpp"
#include "cosat/onestep.hpp"

namespace cosat::detail {

std::shared_ptr<const Engine> kripke_engine(const Logic& l);
std::shared_ptr<const Engine> conditional_engine(const Logic& l);
std::shared_ptr<const Engine> agency_engine(const Logic& l);
std::shared_ptr<const Engine> counting_engine(const Logic& l, const EngineOptions& opt);
std::shared_ptr<const Engine> prob_engine(const Logic& l);

VisitRecord& weight_record();

template <class T>
const T& as(const Structure& s) {
  if (auto p = std::get_if<T>(&s)) return *p;
  throw InternalError("structure kind does not match the engine");
}

}  // namespace cosat::detail

#endif  // COSAT_SRC_ENGINES_HPP_
