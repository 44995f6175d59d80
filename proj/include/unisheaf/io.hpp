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

// JSON forms of field elements, series, towers and the library's results.
//
// A field element is the array of its F_p coordinates in the lowest level
// containing it. Levels of a tower have distinct dimensions, so the length
// of the array names the level.

#ifndef UNISHEAF_IO_HPP_
#define UNISHEAF_IO_HPP_

#include <memory>
#include <string>

#include "json.hpp"
#include "unisheaf/lattice.hpp"

namespace unisheaf {

using Json = nlohmann::json;

Json to_json(const FieldElem& a);
FieldElem field_from_json(Tower& tower, const Json& j);

Json to_json(const Series& s);
Json to_json(const SeriesVec& v);
Json to_json(const Point& p);
Json to_json(const SeriesMat& m);

// {p, e, budget_bits, levels: [{index, degree, dim, modulus}]}.
Json to_json(const Tower& tower);
// Replays the recorded extensions. Throws StoreCorrupt when the result does
// not serialize back to j.
std::shared_ptr<Tower> tower_from_json(const Json& j);

Json to_json(const TateSystem& t);
Json to_json(const Uniformizer& u);
Json to_json(const Lattice& l);
Json to_json(const LineComparison& c);
Json to_json(const UnitRatio& r);
Json to_json(const MooreResult& m);
Json to_json(const BakerResult& b);
Json to_json(const EllipticReport& r);
Json to_json(const StabilizerReport& r);
Json to_json(const ScatteringReport& r);

// Canonical text: sorted keys, no whitespace, trailing newline.
std::string canonical_dump(const Json& j);

// Writes to a temporary file in the same directory, then renames.
void write_atomic(const std::string& path, const std::string& contents);

}  // namespace unisheaf

#endif  // UNISHEAF_IO_HPP_
