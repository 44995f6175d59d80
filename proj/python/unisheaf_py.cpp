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

// Python bindings. Jobs and results cross the boundary as canonical JSON text.

#include <pybind11/gil_safe_call_once.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "unisheaf/jobs.hpp"
#include "unisheaf/store.hpp"
#include "unisheaf/verify.hpp"

namespace py = pybind11;

namespace {

std::string run_job_json(const std::string& job_text, const std::optional<std::string>& store_dir) {
  unisheaf::Json j;
  try {
    j = unisheaf::Json::parse(job_text);
  } catch (const unisheaf::Json::exception& e) {
    unisheaf::fail(unisheaf::ErrorCode::kInvalidArgument, std::string("job is not JSON: ") + e.what());
  }
  const unisheaf::JobSpec job = unisheaf::job_from_json(j);
  std::optional<unisheaf::Store> store;
  if (store_dir) store.emplace(*store_dir);
  std::string status;
  unisheaf::Json out;
  {
    py::gil_scoped_release release;
    out = unisheaf::run_job(job, store ? &*store : nullptr, &status);
  }
  out["cache"] = status;
  return unisheaf::canonical_dump(out);
}

std::string verify_json(const std::vector<std::string>& suites, std::uint64_t seed) {
  std::vector<unisheaf::SuiteResult> results;
  {
    py::gil_scoped_release release;
    results = unisheaf::run_suites(suites, seed);
  }
  return unisheaf::canonical_dump(unisheaf::verify_report(results, seed));
}

std::vector<py::dict> catalog() {
  std::vector<py::dict> out;
  for (const unisheaf::SuiteInfo& s : unisheaf::suite_catalog()) {
    out.push_back(py::dict(py::arg("id") = s.id, py::arg("name") = s.name, py::arg("title") = s.title));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_unisheaf, m) {
  m.doc() = "Bindings of the unisheaf library";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_storage;
  error_storage.call_once_and_store_result(
      [&]() { return py::exception<unisheaf::Error>(m, "UnisheafError", PyExc_RuntimeError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const unisheaf::Error& e) {
      py::tuple args = py::make_tuple(e.exit_code(), unisheaf::error_name(e.code()), e.what());
      PyErr_SetObject(error_storage.get_stored().ptr(), args.ptr());
    }
  });

  m.attr("POLICY_VERSION") = unisheaf::kPolicyVersion;
  m.attr("DEFAULT_SEED") = unisheaf::kDefaultSeed;
  m.attr("COMMANDS") = unisheaf::job_commands();

  m.def("run_job_json", &run_job_json, py::arg("job"), py::arg("store") = py::none(),
        "Runs a job given as JSON text; returns the artifact as canonical JSON text.");
  m.def("verify_json", &verify_json, py::arg("suites") = std::vector<std::string>{},
        py::arg("seed") = unisheaf::kDefaultSeed, "Runs verification suites; returns the report as JSON text.");
  m.def("suite_catalog", &catalog, "Suites in report order.");
  m.def(
      "cache_key", [](const std::string& job_text, int policy_version) {
        return unisheaf::Store::key(unisheaf::to_json(unisheaf::job_from_json(unisheaf::Json::parse(job_text))),
                                    policy_version);
      },
      py::arg("job"), py::arg("policy_version") = unisheaf::kPolicyVersion);
  m.def("error_name", [](int code) { return unisheaf::error_name(static_cast<unisheaf::ErrorCode>(code)); });
}
