// Copyright 2026 The unisheaf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Job descriptions shared by the command line tool and the Python module,
// and the commands that turn them into JSON artifacts.

#ifndef UNISHEAF_JOBS_HPP_
#define UNISHEAF_JOBS_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "unisheaf/io.hpp"
#include "unisheaf/store.hpp"

namespace unisheaf {

// Elements of F_q are written as their F_p coordinates over the canonical
// power basis of F_q, constant coordinate first.
using FqCoords = std::vector<int>;

struct JobSpec {
  std::string command;
  std::uint64_t q = 2;
  FqCoords theta = {1};
  // phi_t = theta + g_1 sigma + ... + g_n sigma^n. Empty means Carlitz.
  std::vector<FqCoords> g;
  // The place t - xi, unless `place` gives a monic irreducible polynomial,
  // constant term first.
  FqCoords xi = {0};
  std::vector<FqCoords> place;
  int prec = 6;
  // Torsion level r of ker phi_{pi^r}.
  int r = 1;
  // Chain depth; -1 means prec - 1.
  int depth = -1;
  // Lattice window [-window_n, window_m).
  int window_n = 3;
  int window_m = 3;
  int budget = kDefaultBudgetBits;
  std::string policy = "lex_least";
  std::uint64_t seed = 1;
  // Exponents of the diagonal factor of the Baker input.
  std::vector<int> exponents;
  // Lattice for lattice-check and stabilizer: module, trivial or shifted.
  std::string variant = "module";
  int k = 1;
  // Stabilizer exponent range [-a, b].
  int a = 2;
  int b = 2;

  int effective_depth() const { return depth >= 0 ? depth : prec - 1; }
};

Json to_json(const JobSpec& job);
JobSpec job_from_json(const Json& j);

// Splits q = p^e. Throws InvalidArgument unless q is a prime power.
std::pair<std::uint32_t, int> split_prime_power(std::uint64_t q);

// Parses "a,b,c" into coordinates.
FqCoords parse_coords(const std::string& text);

const std::vector<std::string>& job_commands();

PickPolicy parse_policy(const std::string& name);

// An n x n matrix over F_q[t_x] of t_x-degree <= degree, invertible over
// F_q[[t_x]], drawn from rng.
SeriesMat random_unit_matrix(int n, const Tower& tower, int prec, std::mt19937_64& rng, int degree = 2);

// Runs uniformizer, torsion, baker, scattering, lattice-check or stabilizer.
// Torsion artifacts go through the store when one is given; cache_status
// receives "hit", "miss", "recomputed" or "off".
Json run_job(const JobSpec& job, const Store* store = nullptr, std::string* cache_status = nullptr);

}  // namespace unisheaf

#endif  // UNISHEAF_JOBS_HPP_
