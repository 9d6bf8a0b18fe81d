// Copyright 2026 The spacesched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "spacesched/cli/problem_io.hpp"

#include <fstream>
#include <sstream>

namespace spacesched::cli {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorKind::kInvalidInput, what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) bad(where + ": missing \"" + key + "\"");
  return *it;
}

Space read_integer(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<Space>::max())) {
      throw Error(ErrorKind::kOverflow, where + ": value out of range");
    }
    return static_cast<Space>(u);
  }
  if (v.is_number_integer()) return v.get<Space>();
  bad(where + ": expected an integer");
}

Index read_index(const json& v, const std::string& where) {
  const Space i = read_integer(v, where);
  if (i < 1) bad(where + ": indices are 1-based");
  return static_cast<Index>(i);
}

std::string read_id(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where + ": expected a string");
  return v.get<std::string>();
}

BasicRestriction parse_atom(const json& node, const std::string& where) {
  const std::string kind = read_id(node.at("atom"), where + ".atom");
  const std::string p1 = read_id(field(node, "p1", where), where + ".p1");
  const std::string p2 = read_id(field(node, "p2", where), where + ".p2");
  if (kind == "simul" || kind == "before") {
    const Index i1 = read_index(field(node, "i1", where), where + ".i1");
    const Index i2 = read_index(field(node, "i2", where), where + ".i2");
    return kind == "simul" ? BasicRestriction::simul(p1, p2, i1, i2)
                           : BasicRestriction::before(p1, p2, i1, i2);
  }
  if (kind == "starts" || kind == "ends") {
    const Index i = read_index(field(node, "i", where), where + ".i");
    return kind == "starts" ? BasicRestriction::starts(p1, p2, i)
                            : BasicRestriction::ends(p1, p2, i);
  }
  bad(where + ": unknown atom \"" + kind + "\"");
}

Formula parse_node(const json& node, const std::string& where) {
  if (!node.is_object()) bad(where + ": expected an object");
  if (node.contains("atom")) return Formula::atom(parse_atom(node, where));
  const std::string op = read_id(field(node, "op", where), where + ".op");
  const json& args = field(node, "args", where);
  if (!args.is_array()) bad(where + ".args: expected an array");
  std::vector<Formula> children;
  for (std::size_t k = 0; k < args.size(); ++k) {
    children.push_back(parse_node(args[k], where + ".args[" + std::to_string(k) + "]"));
  }
  if (op == "and") return Formula::all_of(std::move(children));
  if (op == "or") return Formula::any_of(std::move(children));
  if (op == "not") {
    if (children.size() != 1) bad(where + ": \"not\" takes one argument");
    return Formula::negate(std::move(children.front()));
  }
  bad(where + ": unknown connective \"" + op + "\"");
}

}  // namespace

Formula parse_formula(const json& node) { return parse_node(node, "constraints"); }

ProblemFile parse_problem(const json& doc) {
  if (!doc.is_object()) bad("problem file: expected a JSON object");
  const json& version = field(doc, "version", "problem file");
  if (!version.is_number_integer() || version.get<int>() != 1) {
    bad("problem file: unsupported version");
  }
  const json& procs = field(doc, "processes", "problem file");
  if (!procs.is_array() || procs.empty()) bad("processes: expected a nonempty array");

  std::vector<Process> out;
  for (std::size_t k = 0; k < procs.size(); ++k) {
    const std::string where = "processes[" + std::to_string(k) + "]";
    const json& p = procs[k];
    if (!p.is_object()) bad(where + ": expected an object");
    const std::string id = read_id(field(p, "id", where), where + ".id");
    const json& tr = field(p, "trace", where);
    if (!tr.is_array()) bad(where + ".trace: expected an array");
    Trace trace;
    trace.reserve(tr.size());
    for (const auto& v : tr) trace.push_back(read_integer(v, where + ".trace"));
    out.push_back(make_process(id, std::move(trace)));
  }

  ProblemFile problem{ProcessSet(std::move(out)), false, Formula()};
  if (const auto it = doc.find("constraints"); it != doc.end() && !it->is_null()) {
    problem.has_constraints = true;
    problem.constraints = parse_formula(*it);
    ConstrainedProblem{problem.processes, problem.constraints}.validate();
  }
  return problem;
}

ProblemFile parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  return parse_problem(doc);
}

ProblemFile read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str());
}

json to_json(const ProcessSet& set) {
  json arr = json::array();
  for (const auto& p : set) arr.push_back({{"id", p.id()}, {"trace", p.trace()}});
  return arr;
}

json to_json(const Formula& f) {
  switch (f.op()) {
    case Formula::Op::kAtom: {
      const BasicRestriction& r = f.restriction();
      json a = {{"atom", std::string(to_string(r.kind))}, {"p1", r.p1}, {"p2", r.p2}};
      if (r.kind == RestrictionKind::kSimul || r.kind == RestrictionKind::kBefore) {
        a["i1"] = r.i1;
        a["i2"] = r.i2;
      } else {
        a["i"] = r.i2;
      }
      return a;
    }
    case Formula::Op::kAnd:
    case Formula::Op::kOr:
    case Formula::Op::kNot: {
      json args = json::array();
      for (const auto& c : f.children()) args.push_back(to_json(c));
      const char* op = f.op() == Formula::Op::kAnd ? "and"
                       : f.op() == Formula::Op::kOr ? "or"
                                                    : "not";
      return {{"op", op}, {"args", args}};
    }
  }
  return nullptr;
}

json to_json(const ProblemFile& problem) {
  json doc = {{"version", 1}, {"processes", to_json(problem.processes)}};
  if (problem.has_constraints) doc["constraints"] = to_json(problem.constraints);
  return doc;
}

}  // namespace spacesched::cli
