#pragma once

#include <array>
#include <string>
#include <vector>

#include "threedpm/io.hpp"
#include "threedpm/model.hpp"

namespace testing_helpers {

inline threedpm::Matching matching_of(const threedpm::Instance& inst,
                                      const std::vector<std::array<std::string, 3>>& names) {
  std::vector<threedpm::Triple> triples;
  for (const auto& t : names) triples.push_back({inst.id(t[0]), inst.id(t[1]), inst.id(t[2])});
  return threedpm::Matching(inst, std::move(triples));
}

inline threedpm::Instance random_instance(std::size_t n, bool complete, std::uint64_t seed) {
  threedpm::GenerateOptions o;
  o.n = n;
  o.complete = complete;
  o.seed = seed;
  return threedpm::generate(o);
}

inline threedpm::Instance ml_instance(std::size_t n, int k, std::uint64_t seed, bool complete = true) {
  threedpm::GenerateOptions o;
  o.kind = threedpm::GenKind::MasterList;
  o.n = n;
  o.k = k;
  o.complete = complete;
  o.seed = seed;
  return threedpm::generate(o);
}

}  // namespace testing_helpers
