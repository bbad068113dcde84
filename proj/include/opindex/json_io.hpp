#pragma once

#include "opindex/ab_lattice.hpp"
#include "opindex/word.hpp"

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>

namespace opindex {

using json = nlohmann::json;

// ScalarFn schema: {"kind":"builtin","name":...} | {"kind":"fourier","coeffs":{"k":[re,im]}}
// | {"kind":"piecewise_linear","x":[...],"re":[...],"im":[...]}.
json scalar_fn_to_json(const ScalarFn& f);
ScalarFn scalar_fn_from_json(const json& j);

// Word schema: {"terms":[{"a":{...},"b":{...},"j":int}]}; the "a" slot also
// accepts {"kind":"builtin","name":"L"|"Ltilde"} and
// {"kind":"semiperiodic","plus":{...},"minus":{...},"decaying":{...}}.
json word_to_json(const GeneratorWord& w);
GeneratorWord word_from_json(const json& j);

// Loops export as CSV rows (index, re, im).
void loop_to_csv(const SampledLoop& loop, std::ostream& os);

// Diagram schema: {"groups":[{"rank":r,"torsion":[...]}|null,...],
//                  "maps":[{"matrix":[[...]],"from":i,"to":j,"cite":s}|null,...],
//                  "labels":[...], "name":s}.
json diagram_to_json(const SixTermDiagram& d);
SixTermDiagram diagram_from_json(const json& j);

// Binary matrix container: magic "OPIX", int64 n, double L, int64 provenance
// length, provenance bytes, then row-major complex128.
void write_matrix_container(const DiscreteOperator& op, const std::string& path);
DiscreteOperator read_matrix_container(const std::string& path);

}  // namespace opindex
