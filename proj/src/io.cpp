#include "lrcw/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "lrcw/error.hpp"

namespace lrcw {

namespace {

template <class T>
T get(const json& j, const char* key) {
  require(j.contains(key), ErrorKind::Parse, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

json field_to_json(const FiniteField& f) {
  return json{{"p", f.p()}, {"m", f.m()}, {"modulus", f.modulus()}};
}

Field field_from_json(const json& j) {
  const auto p = get<std::uint32_t>(j, "p");
  const auto m = j.contains("m") ? get<std::uint32_t>(j, "m") : 1u;
  if (j.contains("modulus") && m > 1) return FiniteField::make(p, m, get<std::vector<std::uint32_t>>(j, "modulus"));
  return FiniteField::make(p, m);
}

json to_json(const EvaluationLayout& L) {
  const auto& p = L.params;
  return json{{"field", field_to_json(*L.field)},
              {"params", {{"r", p.r}, {"delta", p.delta}, {"ell", p.ell}, {"v", p.v}, {"h", p.h}}},
              {"n", L.n()},
              {"k", p.k()},
              {"max_intersection", L.max_intersection},
              {"S", L.S},
              {"A", L.A},
              {"dropped", L.dropped},
              {"universe", L.universe}};
}

EvaluationLayout layout_from_json(const json& j) {
  const Field f = field_from_json(get<json>(j, "field"));
  const auto pj = get<json>(j, "params");
  LrcParams p{get<std::size_t>(pj, "r"), get<std::size_t>(pj, "delta"), get<std::size_t>(pj, "ell"),
              get<std::size_t>(pj, "v"), get<std::size_t>(pj, "h")};
  auto sets = get<std::vector<std::vector<Elem>>>(j, "A");
  if (j.contains("dropped") && !sets.empty()) {
    const auto dropped = get<std::vector<Elem>>(j, "dropped");
    sets.back().insert(sets.back().end(), dropped.begin(), dropped.end());
  }
  auto L = build_layout(p, f, std::move(sets), get<std::vector<Elem>>(j, "S"));
  if (j.contains("universe")) L.universe = get<std::vector<Elem>>(j, "universe");
  return L;
}

json to_json(const ErasurePattern& pat) { return json{{"E", pat.E}, {"glob", pat.glob}}; }

ErasurePattern pattern_from_json(const json& j) {
  ErasurePattern p;
  p.E = get<std::vector<std::vector<Elem>>>(j, "E");
  if (j.contains("glob")) p.glob = get<std::vector<Elem>>(j, "glob");
  p.canonicalize();
  return p;
}

json to_json(const ArrayLayout& arr) {
  json cells = json::array();
  json zero = json::array();
  for (std::size_t r = 0; r < arr.rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < arr.cols; ++c) {
      const auto x = arr.at(r, c);
      if (x) {
        row.push_back(*x);
      } else {
        row.push_back(nullptr);
        zero.push_back({r, c});
      }
    }
    cells.push_back(std::move(row));
  }
  json pts = json::array();
  for (const auto& p : arr.column_points) pts.push_back(p ? json(*p) : json(nullptr));
  return json{{"kind", to_string(arr.kind)}, {"rows", arr.rows},     {"cols", arr.cols},
              {"data_cols", arr.data_cols},  {"cell_map", cells},    {"zero_fill", zero},
              {"column_points", pts}};
}

ArrayLayout array_from_json(const json& j) {
  ArrayLayout arr;
  const auto kind = get<std::string>(j, "kind");
  arr.kind = kind == "basic"        ? ArrayKind::Basic
             : kind == "rearranged" ? ArrayKind::Rearranged
             : kind == "truncated"  ? ArrayKind::Truncated
                                    : ArrayKind::Imported;
  arr.rows = get<std::size_t>(j, "rows");
  arr.cols = get<std::size_t>(j, "cols");
  arr.data_cols = get<std::size_t>(j, "data_cols");
  const auto cells = get<json>(j, "cell_map");
  require(cells.size() == arr.rows, ErrorKind::Parse, "cell_map has wrong row count");
  for (const auto& row : cells) {
    require(row.size() == arr.cols, ErrorKind::Parse, "cell_map row has wrong length");
    for (const auto& x : row) arr.cells.push_back(x.is_null() ? std::nullopt : std::optional(x.get<std::size_t>()));
  }
  arr.column_points.assign(arr.cols, std::nullopt);
  if (j.contains("column_points")) {
    const auto pts = get<json>(j, "column_points");
    for (std::size_t c = 0; c < std::min(arr.cols, pts.size()); ++c)
      if (!pts[c].is_null()) arr.column_points[c] = pts[c].get<Elem>();
  }
  return arr;
}

json to_json(const GoppaParams& P) {
  return json{{"field", field_to_json(*P.field)},
              {"G1", P.G1.coeffs},
              {"G2", P.G2.coeffs},
              {"sets", P.sets},
              {"last", P.last}};
}

GoppaParams goppa_from_json(const json& j) {
  GoppaParams P;
  P.field = field_from_json(get<json>(j, "field"));
  P.G1 = Poly(get<std::vector<Elem>>(j, "G1"));
  P.G2 = Poly(get<std::vector<Elem>>(j, "G2"));
  P.sets = get<std::vector<std::vector<Elem>>>(j, "sets");
  if (j.contains("last")) P.last = get<std::vector<Elem>>(j, "last");
  P.validate();
  return P;
}

json to_json(const DesignReport& rep) {
  json j{{"well_formed", rep.well_formed},
         {"is_packing", rep.is_packing},
         {"is_steiner", rep.is_steiner},
         {"regularity", rep.regularity ? json(*rep.regularity) : json("NonRegular")},
         {"sampled", rep.sampled},
         {"subsets_checked", rep.subsets_checked}};
  if (rep.sampled) j["seed"] = rep.seed;
  return j;
}

json to_json(const LocalityReport& rep) {
  json sets = json::array();
  for (const auto& e : rep.sets)
    sets.push_back({{"size", e.size}, {"required", e.required}, {"distance", e.distance}, {"ok", e.ok}});
  return json{{"ok", rep.ok},
              {"information_rank", rep.info_rank},
              {"information_locality", rep.information_locality},
              {"repair_sets", sets}};
}

json to_json(const DistanceResult& res, bool with_counts) {
  json j{{"d", res.d}, {"bounded", res.bounded}, {"witness", res.witness}};
  if (with_counts) j["rank_tests"] = res.rank_tests;
  return j;
}

json to_json(const GsdReport& rep) {
  json j{{"y", rep.y},
         {"gamma", rep.gamma},
         {"data_columns_only", rep.data_only},
         {"sampled", rep.sampled},
         {"total_patterns", rep.total},
         {"tested", rep.tested},
         {"passed", rep.passed},
         {"failed", rep.failed},
         {"rows", rep.rows},
         {"d", rep.d},
         {"gsd_condition", rep.qualifies},
         {"zero_fill_excluded", true},
         {"witnesses", rep.witnesses}};
  if (rep.sampled) j["seed"] = rep.seed;
  return j;
}

json to_json(const GsdParamsReport& rep) {
  json claims = json::array();
  for (const auto& c : rep.claims)
    claims.push_back({{"item", c.item},
                      {"y", c.y},
                      {"gamma", c.gamma},
                      {"precondition", c.precondition},
                      {"beyond_distance", c.beyond},
                      {"claimed", c.claimed},
                      {"gsd_condition", c.qualifies}});
  return json{{"family", to_string(rep.family)},
              {"r", rep.r},
              {"h", rep.h},
              {"block_size", rep.t},
              {"rows", rep.b},
              {"cols", rep.cols},
              {"blocks", rep.blocks},
              {"n", rep.n},
              {"k", rep.k},
              {"d_stated", rep.d_stated},
              {"d_singleton", rep.d_singleton},
              {"q_min", rep.q_min},
              {"h_le_delta_sq", rep.h_le_delta_sq},
              {"valid", rep.valid},
              {"violations", rep.violations},
              {"claims", claims}};
}

json to_json(const LengthBound& lb) {
  json j{{"a", lb.a}, {"T", lb.T}, {"applicable", lb.applicable}};
  if (!lb.applicable) return j;
  j["case"] = lb.even ? "even" : "odd";
  j["exponent"] = std::to_string(lb.exp_num) + "/" + std::to_string(lb.exp_den);
  j["exact"] = lb.exact;
  j["lower"] = lb.lower;
  j["upper"] = lb.upper;
  j["floor"] = lb.floor ? json(*lb.floor) : json(nullptr);
  j["beyond_int64"] = lb.beyond_int64;
  return j;
}

json to_json(const BoundReport& rep) {
  json by = json::array();
  for (const auto& lb : rep.by_a) by.push_back(to_json(lb));
  return json{{"n", rep.n},
              {"k", rep.k},
              {"r", rep.r},
              {"delta", rep.delta},
              {"d", rep.d},
              {"q", rep.q},
              {"d_singleton", rep.d_singleton},
              {"optimal", rep.optimal},
              {"advisory", rep.advisory},
              {"n_max_by_a", by},
              {"best_n_max", rep.best_n_max ? json(*rep.best_n_max) : json(nullptr)},
              {"best_a", rep.best_a ? json(*rep.best_a) : json(nullptr)},
              {"within_bound", rep.within_bound},
              {"order_exponent",
               std::to_string(rep.order_exp_num) + "/" + std::to_string(rep.order_exp_den)},
              {"notes", rep.notes}};
}

json to_json(const GoppaDistanceReport& rep) {
  return json{{"n", rep.n},
              {"k", rep.k},
              {"k_expected", rep.k_expected},
              {"k_equal", rep.k_equal},
              {"r", rep.r},
              {"delta", rep.delta},
              {"h", rep.h},
              {"ell", rep.ell},
              {"t", rep.t},
              {"separable", rep.separable},
              {"hypothesis", rep.hypothesis},
              {"last_disjoint", rep.last_disjoint},
              {"designed_distance", rep.designed},
              {"measured_distance", rep.measured},
              {"distance_ok", rep.distance_ok},
              {"optimality_claimed", rep.optimal_claim},
              {"optimality_ok", rep.optimal_ok},
              {"singleton", rep.singleton},
              {"ok", rep.ok}};
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::Parse, "cannot write '" + path + "'");
  out << text;
}

}  // namespace lrcw
