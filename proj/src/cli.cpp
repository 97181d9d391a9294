#include "lrcw/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <sstream>

#include "lrcw/bounds.hpp"
#include "lrcw/design.hpp"
#include "lrcw/erasure.hpp"
#include "lrcw/error.hpp"
#include "lrcw/fixtures.hpp"
#include "lrcw/goppa.hpp"
#include "lrcw/parallel.hpp"

namespace lrcw::cli {

namespace {

constexpr std::uint64_t kNoLimit = std::numeric_limits<std::uint64_t>::max();

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, e.what());
  }
}

EvaluationLayout load_layout(const std::string& path) { return layout_from_json(parse_json(read_file(path))); }
Matrix load_matrix(const std::string& path) { return matrix_from_text(read_file(path)); }

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

/// Fixed information vector, so reports do not depend on a seed.
std::vector<Elem> reference_word(const EvaluationLayout& L) {
  std::vector<Elem> info(L.params.k());
  for (std::size_t i = 0; i < info.size(); ++i) info[i] = static_cast<Elem>((7 * i + 3) % L.field->q());
  return encode(L, info);
}

Design make_design(const DesignSpec& s) {
  if (!s.file.empty()) {
    std::istringstream is(read_file(s.file));
    return read_design(is);
  }
  require(!s.family.empty(), ErrorKind::InvalidParameter, "a design family or --design file is required");
  if (s.family == "ag") return ag_steiner(s.q1, s.beta);
  if (s.family == "pg") return pg_steiner(s.q1, s.beta);
  if (s.family == "sg") return sg_steiner(s.q1, s.beta);
  if (s.family == "cyclotomic" || s.family == "packing") return cyclotomic_packing(s.prime_powers, s.e);
  fail(ErrorKind::InvalidParameter, "unknown design family '" + s.family + "'");
}

/// Writes the artifact to --out; when that is a file the JSON report goes to stdout.
void deliver(const RunConfig& c, std::ostream& out, const std::string& artifact, const json& report) {
  if (c.out == "-") {
    out << artifact;
    if (!artifact.empty() && artifact.back() != '\n') out << '\n';
  } else {
    write_file(c.out, artifact);
    emit(out, report);
  }
}

bool sampled_mode(const RunConfig& c, std::uint64_t total) {
  if (c.mode == Mode::Exhaustive) return false;
  if (c.mode == Mode::Sampled) return true;
  if (total <= c.exhaustive_limit) return false;
  require(c.seed.has_value(), ErrorKind::InvalidParameter,
          std::to_string(total) + " cases exceed --exhaustive-limit; sampled mode needs --seed");
  return true;
}

// designs ---------------------------------------------------------------

int designs_gen(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Design d = make_design(c.design);
  std::ostringstream os;
  write_design(os, d);
  json rep{{"family", c.design.family},
           {"points", d.num_points},
           {"tau", d.tau},
           {"block_size", d.block_size},
           {"blocks", d.blocks.size()},
           {"regularity", d.regularity ? json(*d.regularity) : json(nullptr)},
           {"steiner", d.steiner}};
  deliver(c, out, os.str(), rep);
  err << "design: " << d.num_points << " points, " << d.blocks.size() << " blocks of size " << d.block_size << '\n';
  return 0;
}

int designs_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::istringstream is(read_file(c.design.file.empty() ? c.in : c.design.file));
  const Design d = read_design(is);
  const std::uint64_t inside = binomial(d.block_size, d.tau);
  const std::uint64_t total = d.blocks.size() > 0 && inside > kNoLimit / d.blocks.size() ? kNoLimit : d.blocks.size() * inside;
  const bool sampled = sampled_mode(c, total);
  const auto rep = verify_design(d, sampled ? 0 : kNoLimit, c.samples, c.seed.value_or(0));
  const auto jb = d.tau >= 1 ? johnson_bound(d.num_points, d.block_size, d.tau - 1) : 0;
  json j = to_json(rep);
  j["points"] = d.num_points;
  j["tau"] = d.tau;
  j["block_size"] = d.block_size;
  j["blocks"] = d.blocks.size();
  j["johnson_bound"] = jb;
  const bool ok = rep.well_formed && rep.is_packing && d.blocks.size() <= jb;
  j["ok"] = ok;
  emit(out, j);
  err << verdict(ok) << " designs verify: packing=" << rep.is_packing << " steiner=" << rep.is_steiner
      << (rep.sampled ? " (sampled)" : "") << '\n';
  return ok ? 0 : 1;
}

// lrc -------------------------------------------------------------------

int lrc_construct(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require(c.params.has_value(), ErrorKind::InvalidParameter, "--r, --delta, --ell, --v and --h are required");
  require(c.p != 0, ErrorKind::InvalidParameter, "--p is required");
  const Field f = FiniteField::make(c.p, c.m);
  const Design d = make_design(c.design);
  const auto L = build_layout(*c.params, f, d, c.S);
  if (!c.matrix_out.empty()) write_file(c.matrix_out, to_text(parity_check_matrix(L)));
  json rep{{"n", L.n()}, {"k", L.params.k()}, {"q", f->q()}, {"sets", L.num_sets()},
           {"max_intersection", L.max_intersection}};
  deliver(c, out, to_json(L).dump(2), rep);
  err << "layout: [" << L.n() << ", " << L.params.k() << "] over F_" << f->q() << ", " << L.num_sets()
      << " repair sets\n";
  return 0;
}

int lrc_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  LinearCode code;
  std::int64_t r = c.r, delta = c.delta, q = c.q;
  if (!c.layout.empty()) {
    const auto L = load_layout(c.layout);
    code = build_code(L);
    r = static_cast<std::int64_t>(L.params.r);
    delta = static_cast<std::int64_t>(L.params.delta);
    q = L.field->q();
  } else {
    require(!c.matrix.empty(), ErrorKind::InvalidParameter, "--layout or --matrix is required");
    require(c.local_weight > 0 && delta >= 2, ErrorKind::InvalidParameter,
            "--matrix needs --local-weight and --delta to find repair sets");
    const Matrix H = load_matrix(c.matrix);
    code = code_from_parity_check(H, repair_sets_from_rows(H, c.local_weight, static_cast<std::size_t>(delta)));
    q = H.field()->q();
    if (r == 0) {
      std::size_t widest = 0;
      for (const auto& rs : code.repair_sets) widest = std::max(widest, rs.coords.size());
      r = static_cast<std::int64_t>(widest) - delta + 1;
    }
  }
  const auto loc = verify_locality(code);
  json j{{"n", code.n}, {"k", code.k}, {"r", r}, {"delta", delta}, {"locality", to_json(loc)}};
  bool ok = loc.ok;
  const auto n = static_cast<std::int64_t>(code.n), k = static_cast<std::int64_t>(code.k);
  j["d_singleton"] = r > 0 && k > 0 ? json(singleton_bound(n, k, r, delta)) : json(nullptr);
  if (c.distance || c.expect_d) {
    DistanceOptions opts;
    opts.d_max = c.d_max;
    opts.workers = c.workers;
    const auto res = min_distance(code.H, opts);
    j["distance"] = to_json(res);
    if (r > 0 && k > 0) {
      j["optimal"] = static_cast<std::int64_t>(res.d) == singleton_bound(n, k, r, delta);
      j["bounds"] = to_json(classify(n, k, r, delta, static_cast<std::int64_t>(res.d), q));
    }
    if (c.expect_d) ok = ok && res.d == *c.expect_d;
  }
  j["ok"] = ok;
  emit(out, j);
  err << verdict(ok) << " lrc verify: [" << code.n << ", " << code.k << "], " << code.repair_sets.size()
      << " repair sets\n";
  return ok ? 0 : 1;
}

// erasure ---------------------------------------------------------------

struct Outcome {
  bool admissible = false;
  bool recoverable = false;
  bool structured_ok = false;
  bool linear_ok = false;
  std::string error;
  bool failed() const { return admissible && (!recoverable || !structured_ok || !linear_ok); }
};

Outcome examine(const EvaluationLayout& L, const Matrix& H, const std::vector<Elem>& word,
                const ErasurePattern& pat) {
  Outcome o;
  const auto coords = pat.coords(L);
  o.admissible = pattern_admissible(L, pat).admissible;
  o.recoverable = recoverable(H, coords);
  if (!o.admissible) return o;
  const auto received = lrcw::erase(word, coords);
  try {
    o.structured_ok = decode_structured(L, received, pat) == word;
  } catch (const Error& e) {
    o.error = e.what();
  }
  try {
    const auto lin = decode_linear(H, coords, received);
    o.linear_ok = lin && *lin == word;
  } catch (const Error& e) {
    if (o.error.empty()) o.error = e.what();
  }
  return o;
}

int erasure_check(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require(!c.layout.empty(), ErrorKind::InvalidParameter, "--layout is required");
  const auto L = load_layout(c.layout);
  const Matrix H = parity_check_matrix(L);
  const auto word = reference_word(L);
  const std::size_t budget = L.params.h + L.params.delta - 1;

  json j{{"n", L.n()}, {"k", L.params.k()}};
  std::vector<ErasurePattern> pats;
  bool sampled = false;
  if (!c.pattern.empty()) {
    auto pat = pattern_from_json(parse_json(read_file(c.pattern)));
    validate_pattern(L, pat);
    pats.push_back(std::move(pat));
    j["shape"] = "file";
  } else if (c.shape == "heavy") {
    require(c.mode != Mode::Sampled, ErrorKind::InvalidParameter, "the heavy shape is exhaustive only");
    pats = patterns::heavy_blocks(L, c.max_heavy, budget);
    j["shape"] = "heavy";
    j["max_heavy"] = c.max_heavy;
    j["max_points"] = budget;
  } else if (c.shape == "weight") {
    require(c.weight.has_value(), ErrorKind::InvalidParameter, "--weight is required for the weight shape");
    std::uint64_t total = 0;
    for (std::size_t w = 0; w <= *c.weight; ++w) total += binomial(L.n(), w);
    sampled = sampled_mode(c, total);
    require(!sampled || c.seed.has_value(), ErrorKind::InvalidParameter, "sampled mode needs --seed");
    pats = sampled ? patterns::sampled(L, c.samples, *c.weight, *c.seed) : patterns::exhaustive(L, *c.weight);
    j["shape"] = "weight";
    j["weight"] = *c.weight;
  } else {
    fail(ErrorKind::InvalidParameter, "unknown shape '" + c.shape + "'");
  }
  j["sampled"] = sampled;
  if (sampled) j["seed"] = *c.seed;

  std::vector<Outcome> res(pats.size());
  parallel_for(pats.size(), c.workers, [&](std::size_t i) { res[i] = examine(L, H, word, pats[i]); });

  std::size_t admissible = 0, recov = 0, agree = 0, failures = 0;
  json witnesses = json::array();
  for (std::size_t i = 0; i < pats.size(); ++i) {
    const auto& o = res[i];
    admissible += o.admissible;
    recov += o.recoverable;
    agree += o.admissible && o.structured_ok && o.linear_ok;
    if (o.failed()) {
      ++failures;
      if (witnesses.size() < 10)
        witnesses.push_back({{"pattern", to_json(pats[i])}, {"coords", pats[i].coords(L)}, {"error", o.error}});
    }
  }
  const bool ok = failures == 0 && !pats.empty();
  j["tested"] = pats.size();
  j["admissible"] = admissible;
  j["recoverable"] = recov;
  j["structured_equals_linear"] = agree;
  j["failures"] = failures;
  j["witnesses"] = witnesses;
  j["ok"] = ok;
  emit(out, j);
  err << verdict(ok) << " erasure check: " << pats.size() << " patterns, " << admissible << " admissible, "
      << failures << " failures\n";
  return ok ? 0 : 1;
}

int erasure_decode(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require(!c.layout.empty() && !c.pattern.empty(), ErrorKind::InvalidParameter, "--layout and --pattern are required");
  const auto L = load_layout(c.layout);
  auto pat = pattern_from_json(parse_json(read_file(c.pattern)));
  validate_pattern(L, pat);
  const auto coords = pat.coords(L);
  const auto adm = pattern_admissible(L, pat);

  std::optional<std::vector<Elem>> reference;
  Received received;
  if (!c.received.empty()) {
    const auto rj = parse_json(read_file(c.received));
    require(rj.is_array() && rj.size() == L.n(), ErrorKind::Parse, "received word must be an array of length n");
    for (const auto& x : rj) received.push_back(x.is_null() ? std::nullopt : std::optional<Elem>(x.get<Elem>()));
    for (auto x : coords) received[x] = std::nullopt;
  } else {
    reference = reference_word(L);
    received = lrcw::erase(*reference, coords);
  }

  std::string method = c.method;
  if (method == "auto") method = adm.admissible ? "structured" : "linear";
  std::optional<std::vector<Elem>> decoded;
  if (method == "structured") {
    require(adm.admissible, ErrorKind::NotAdmissible, "pattern is not admissible for the structured decoder");
    decoded = decode_structured(L, received, pat);
  } else if (method == "linear") {
    decoded = decode_linear(parity_check_matrix(L), coords, received);
  } else {
    fail(ErrorKind::InvalidParameter, "unknown method '" + method + "'");
  }
  json j{{"method", method},
         {"erased", coords},
         {"distinct_points", pat.distinct_points()},
         {"admissible", adm.admissible},
         {"recovered", decoded.has_value()},
         {"codeword", decoded ? json(*decoded) : json(nullptr)}};
  bool ok = decoded.has_value();
  if (reference) {
    const bool match = decoded && *decoded == *reference;
    j["matches_reference"] = match;
    ok = ok && match;
  }
  j["ok"] = ok;
  emit(out, j);
  err << verdict(ok) << " erasure decode: " << coords.size() << " erasures, method " << method << '\n';
  return ok ? 0 : 1;
}

int erasure_distance(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Matrix H;
  if (!c.layout.empty()) {
    H = parity_check_matrix(load_layout(c.layout));
  } else {
    require(!c.matrix.empty(), ErrorKind::InvalidParameter, "--layout or --matrix is required");
    H = load_matrix(c.matrix);
  }
  DistanceOptions opts;
  opts.d_max = c.d_max;
  opts.workers = c.workers;
  const auto res = min_distance(H, opts);
  json j{{"n", H.cols()}, {"k", H.cols() - rank(H)}};
  j.update(to_json(res));
  bool ok = true;
  if (c.expect_d) ok = res.d == *c.expect_d;
  j["ok"] = ok;
  emit(out, j);
  err << verdict(ok) << " erasure distance: d " << (res.bounded ? "= " : "> ") << (res.bounded ? res.d : res.d - 1)
      << '\n';
  return ok ? 0 : 1;
}

// gsd -------------------------------------------------------------------

int gsd_build(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require(!c.layout.empty(), ErrorKind::InvalidParameter, "--layout is required");
  const auto L = load_layout(c.layout);
  ArrayLayout arr;
  switch (c.construction) {
    case 2: arr = array_basic(L); break;
    case 3: arr = array_rearranged(L); break;
    case 4: arr = array_truncated(L); break;
    default: fail(ErrorKind::InvalidParameter, "--construction must be 2, 3 or 4");
  }
  validate_array(arr, L.n());
  if (!c.matrix_out.empty()) write_file(c.matrix_out, to_text(parity_check_matrix(L)));
  json rep{{"kind", to_string(arr.kind)}, {"rows", arr.rows}, {"cols", arr.cols}, {"zero_fill", arr.zero_fill()}};
  deliver(c, out, to_json(arr).dump(2), rep);
  err << "array: " << to_string(arr.kind) << ' ' << arr.rows << " x " << arr.cols << ", " << arr.zero_fill()
      << " zero-fill cells\n";
  return 0;
}

int gsd_check_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Matrix H;
  std::optional<EvaluationLayout> L;
  if (!c.layout.empty()) {
    L = load_layout(c.layout);
    H = parity_check_matrix(*L);
  } else {
    require(!c.matrix.empty(), ErrorKind::InvalidParameter, "--layout or --matrix is required");
    H = load_matrix(c.matrix);
  }
  ArrayLayout arr;
  if (!c.array.empty()) {
    arr = array_from_json(parse_json(read_file(c.array)));
  } else if (L) {
    arr = array_basic(*L);
  } else {
    require(c.rows > 0, ErrorKind::InvalidParameter, "--array, --layout or --rows is required");
    arr = column_major(H.cols(), c.rows, c.data_cols);
  }
  std::size_t d = c.d;
  if (d == 0) {
    if (L) {
      d = L->params.h + L->params.delta;
    } else {
      DistanceOptions dopts;
      dopts.workers = c.workers;
      d = min_distance(H, dopts).d;
    }
  }
  GsdCheckOptions opts;
  opts.y = c.y;
  opts.gamma = c.gamma;
  opts.data_only = !c.all_columns;
  opts.samples = c.samples;
  opts.seed = c.seed.value_or(0);
  opts.workers = c.workers;
  opts.d = d;
  opts.exhaustive_limit = sampled_mode(c, gsd_pattern_count(arr, c.y, c.gamma, opts.data_only)) ? 0 : kNoLimit;
  const auto rep = gsd_check(arr, H, opts);
  json j = to_json(rep);
  j["ok"] = rep.ok();
  emit(out, j);
  err << verdict(rep.ok()) << " gsd check: y=" << c.y << " gamma=" << c.gamma << ", " << rep.passed << '/'
      << rep.tested << " recoverable" << (rep.sampled ? " (sampled)" : "") << '\n';
  return rep.ok() ? 0 : 1;
}

int gsd_params_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto rep = gsd_params(c.gsd);
  json j = to_json(rep);
  j["ok"] = rep.valid;
  emit(out, j);
  err << verdict(rep.valid) << " gsd params: " << to_string(rep.family) << " [" << rep.n << ", " << rep.k << "], "
      << rep.b << " x " << rep.cols << " array\n";
  return rep.valid ? 0 : 1;
}

// goppa -----------------------------------------------------------------

GoppaParams load_goppa(const RunConfig& c) {
  require(!c.goppa.empty(), ErrorKind::InvalidParameter, "--params is required");
  return goppa_from_json(parse_json(read_file(c.goppa)));
}

int goppa_build(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto P = load_goppa(c);
  const Matrix H = goppa_pcheck(P);
  const auto rk = rank(H);
  json rep{{"n", P.n()}, {"k", P.n() - rk}, {"r", P.r()}, {"delta", P.delta()}, {"h", P.h()}};
  bool ok = true;
  if (c.splitting) {
    const auto sf = splitting_pcheck(P);
    const Matrix sub = subfield_pcheck(P, sf);
    const bool same = row_basis(sub) == row_basis(H);
    rep["splitting_degree"] = sf.degree;
    rep["splitting_field_order"] = sf.big->q();
    rep["subfield_code_matches"] = same;
    ok = same;
  }
  rep["ok"] = ok;
  deliver(c, out, to_text(H), rep);
  err << verdict(ok) << " goppa build: [" << P.n() << ", " << P.n() - rk << "]\n";
  return ok ? 0 : 1;
}

int goppa_check(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto P = load_goppa(c);
  const auto rep = goppa_distance_check(P, c.t, c.workers);
  const auto code = goppa_code(P);
  const auto loc = verify_locality(code);
  const Matrix G = code.generator();
  bool residue = true;
  for (std::size_t i = 0; i < G.rows(); ++i) {
    const auto row = G.row(i);
    residue = residue && residue_check(P, std::vector<Elem>(row.begin(), row.end()));
  }
  json j = to_json(rep);
  j["locality"] = to_json(loc);
  j["residue_ok"] = residue;
  const bool ok = rep.ok && loc.ok && residue;
  j["ok"] = ok;
  emit(out, j);
  err << verdict(ok) << " goppa check: [" << rep.n << ", " << rep.k << "], d = " << rep.measured
      << ", designed " << rep.designed << '\n';
  return ok ? 0 : 1;
}

// bounds ----------------------------------------------------------------

int bounds_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.subcommand == "singleton") {
    require(c.n >= c.k && c.k >= 1 && c.r >= 1 && c.delta >= 1, ErrorKind::InvalidParameter,
            "need n >= k >= 1, r >= 1, delta >= 1");
    const auto d = singleton_bound(c.n, c.k, c.r, c.delta);
    emit(out, json{{"n", c.n}, {"k", c.k}, {"r", c.r}, {"delta", c.delta}, {"d_singleton", d}});
    err << "singleton bound: " << d << '\n';
    return 0;
  }
  if (c.subcommand == "length") {
    const auto lb = length_bound(c.q, c.r, c.delta, c.h, c.a);
    json j{{"q", c.q}, {"r", c.r}, {"delta", c.delta}, {"h", c.h}};
    j.update(to_json(lb));
    bool ok = lb.applicable && lb.floor.has_value();
    if (c.n > 0 && lb.floor) {
      j["n"] = c.n;
      j["n_within"] = c.n <= *lb.floor;
      ok = ok && c.n <= *lb.floor;
    }
    j["ok"] = ok;
    emit(out, j);
    err << verdict(ok) << " length bound: floor " << (lb.floor ? std::to_string(*lb.floor) : "uncertified") << '\n';
    return ok ? 0 : 1;
  }
  const auto rep = classify(c.n, c.k, c.r, c.delta, c.bound_d, c.q);
  json j = to_json(rep);
  const bool ok = rep.within_bound && c.bound_d <= rep.d_singleton;
  j["ok"] = ok;
  emit(out, j);
  err << verdict(ok) << " classify: singleton " << rep.d_singleton << (rep.optimal ? " (optimal)" : "") << '\n';
  return ok ? 0 : 1;
}

// fixtures --------------------------------------------------------------

class Checks {
public:
  void add(const std::string& name, bool pass, json detail = json::object()) {
    detail["name"] = name;
    detail["ok"] = pass;
    ok_ = ok_ && pass;
    list_.push_back(std::move(detail));
  }
  json report(const std::string& name) const { return json{{"fixture", name}, {"ok", ok_}, {"checks", list_}}; }

private:
  bool ok_ = true;
  json list_ = json::array();
};

int fixtures_run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names = c.targets;
  if (names.empty() || std::find(names.begin(), names.end(), "all") != names.end())
    names = {"example1", "example2", "example3"};
  json all = json::array();
  bool ok = true;
  for (const auto& name : names) {
    json rep;
    if (name == "example1")
      rep = fixture_example1(c.workers);
    else if (name == "example2")
      rep = fixture_example2(c.workers);
    else if (name == "example3")
      rep = fixture_example3(c.workers, c.seed.value_or(kFixtureSeed));
    else
      fail(ErrorKind::InvalidParameter, "unknown fixture '" + name + "'");
    const bool pass = rep["ok"].get<bool>();
    ok = ok && pass;
    err << verdict(pass) << " fixture " << name << '\n';
    for (const auto& ch : rep["checks"])
      if (!ch["ok"].get<bool>()) err << "  failed: " << ch["name"].get<std::string>() << '\n';
    all.push_back(std::move(rep));
  }
  emit(out, json{{"ok", ok}, {"fixtures", all}});
  return ok ? 0 : 1;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto& cmd = c.command;
  const auto& sub = c.subcommand;
  if (cmd == "designs" && sub == "gen") return designs_gen(c, out, err);
  if (cmd == "designs" && sub == "verify") return designs_verify(c, out, err);
  if (cmd == "lrc" && sub == "construct") return lrc_construct(c, out, err);
  if (cmd == "lrc" && sub == "verify") return lrc_verify(c, out, err);
  if (cmd == "erasure" && sub == "check") return erasure_check(c, out, err);
  if (cmd == "erasure" && sub == "decode") return erasure_decode(c, out, err);
  if (cmd == "erasure" && sub == "distance") return erasure_distance(c, out, err);
  if (cmd == "gsd" && sub == "build") return gsd_build(c, out, err);
  if (cmd == "gsd" && sub == "check") return gsd_check_cmd(c, out, err);
  if (cmd == "gsd" && sub == "params") return gsd_params_cmd(c, out, err);
  if (cmd == "goppa" && sub == "build") return goppa_build(c, out, err);
  if (cmd == "goppa" && sub == "check") return goppa_check(c, out, err);
  if (cmd == "bounds") return bounds_cmd(c, out, err);
  if (cmd == "fixtures" && sub == "run") return fixtures_run(c, out, err);
  fail(ErrorKind::InvalidParameter, "unknown command '" + cmd + " " + sub + "'");
}

bool usage_kind(ErrorKind k) {
  return k == ErrorKind::Parse || k == ErrorKind::InvalidParameter || k == ErrorKind::FieldTooSmall ||
         k == ErrorKind::NotRegular;
}

unsigned env_workers() {
  const char* s = std::getenv("LRCW_WORKERS");
  if (!s || !*s) return 1;
  char* end = nullptr;
  const unsigned long v = std::strtoul(s, &end, 10);
  return *end == '\0' && v >= 1 && v <= 1024 ? static_cast<unsigned>(v) : 1;
}

}  // namespace

void RunConfig::validate() const {
  require(workers >= 1, ErrorKind::InvalidParameter, "--workers must be at least 1");
  require(mode != Mode::Sampled || seed.has_value(), ErrorKind::InvalidParameter, "sampled mode needs --seed");
  require(mode != Mode::Sampled || samples > 0, ErrorKind::InvalidParameter, "--samples must be positive");
  if (params) params->validate();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    return dispatch(config, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage_kind(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

Parsed parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Parsed parsed;
  RunConfig& c = parsed.config;
  LrcParams lp;
  std::uint64_t seed = 0;
  std::string mode = "auto";
  unsigned workers = 0;
  std::vector<CLI::Option*> param_opts;
  std::vector<CLI::Option*> seed_opts;
  std::vector<CLI::Option*> opt_expect;
  std::vector<Elem> S;
  std::size_t weight = 0, expect_d = 0;

  CLI::App app{"Locally repairable codes: constructions, erasure recovery and bounds", "lrcw"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");

  auto add_workers = [&](CLI::App* s) {
    s->add_option("--workers", workers, "Worker threads (default: LRCW_WORKERS or 1)")->check(CLI::Range(1u, 1024u));
  };
  auto add_sampling = [&](CLI::App* s) {
    s->add_option("--mode", mode, "auto, exhaustive or sampled")
        ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));
    s->add_option("--samples", c.samples, "Patterns drawn in sampled mode");
    s->add_option("--exhaustive-limit", c.exhaustive_limit, "Largest sweep run exhaustively in auto mode");
    seed_opts.push_back(s->add_option("--seed", seed, "Seed for sampled mode"));
  };
  auto add_design = [&](CLI::App* s) {
    s->add_option("--family", c.design.family, "ag, pg, sg or cyclotomic")
        ->check(CLI::IsMember({"ag", "pg", "sg", "cyclotomic", "packing"}));
    s->add_option("--q1", c.design.q1, "Order of the geometry field");
    s->add_option("--beta", c.design.beta, "Dimension");
    s->add_option("--prime-powers", c.design.prime_powers, "Field orders for cyclotomic packings")->delimiter(',');
    s->add_option("--e", c.design.e, "Block size for cyclotomic packings");
  };

  auto* designs = app.add_subcommand("designs", "Combinatorial designs");
  designs->require_subcommand(1);
  auto* dgen = designs->add_subcommand("gen", "Generate a design");
  add_design(dgen);
  dgen->add_option("--out", c.out, "Design file ('-' for stdout)");
  auto* dver = designs->add_subcommand("verify", "Verify a design file");
  dver->add_option("--in,--design", c.in, "Design file ('-' for stdin)");
  add_sampling(dver);

  auto* lrc = app.add_subcommand("lrc", "Evaluation-code LRCs");
  lrc->require_subcommand(1);
  auto* lcon = lrc->add_subcommand("construct", "Build an evaluation layout");
  lcon->add_option("--p", c.p, "Field characteristic")->required();
  lcon->add_option("--m", c.m, "Extension degree");
  param_opts.push_back(lcon->add_option("--r", lp.r, "Locality"));
  param_opts.push_back(lcon->add_option("--delta", lp.delta, "Local distance"));
  param_opts.push_back(lcon->add_option("--ell", lp.ell, "Number of full repair sets"));
  param_opts.push_back(lcon->add_option("--v", lp.v, "Information symbols in the last set"));
  param_opts.push_back(lcon->add_option("--h", lp.h, "Global parities"));
  auto* opt_S = lcon->add_option("--S", S, "Global evaluation points")->delimiter(',');
  add_design(lcon);
  lcon->add_option("--design", c.design.file, "Design file instead of a family");
  lcon->add_option("--out", c.out, "Layout JSON ('-' for stdout)");
  lcon->add_option("--matrix-out", c.matrix_out, "Also write the parity-check matrix");
  auto* lver = lrc->add_subcommand("verify", "Locality, distance and optimality of a code");
  lver->add_option("--layout", c.layout, "Layout JSON");
  lver->add_option("--matrix", c.matrix, "Parity-check matrix file");
  lver->add_option("--local-weight", c.local_weight, "Rows of H with at most this weight are repair sets");
  lver->add_option("--r", c.r, "Locality for the optimality check");
  lver->add_option("--delta", c.delta, "Local distance of the repair sets");
  lver->add_flag("--distance", c.distance, "Compute the exact minimum distance");
  opt_expect.push_back(lver->add_option("--expect-d", expect_d, "Fail unless the minimum distance equals this"));
  lver->add_option("--d-max", c.d_max, "Search depth limit");
  add_workers(lver);

  auto* era = app.add_subcommand("erasure", "Erasure recovery");
  era->require_subcommand(1);
  auto* echk = era->add_subcommand("check", "Structured vs linear recovery over patterns");
  echk->add_option("--layout", c.layout, "Layout JSON")->required();
  echk->add_option("--pattern", c.pattern, "Single pattern JSON");
  echk->add_option("--shape", c.shape, "weight or heavy")->check(CLI::IsMember({"weight", "heavy"}));
  auto* opt_weight = echk->add_option("--weight", weight, "Coordinate weight for the weight shape");
  echk->add_option("--max-heavy", c.max_heavy, "Heavy sets for the heavy shape");
  add_sampling(echk);
  add_workers(echk);
  auto* edec = era->add_subcommand("decode", "Recover one erasure pattern");
  edec->add_option("--layout", c.layout, "Layout JSON")->required();
  edec->add_option("--pattern", c.pattern, "Pattern JSON")->required();
  edec->add_option("--received", c.received, "Received word JSON (null marks an erasure)");
  edec->add_option("--method", c.method, "auto, structured or linear")
      ->check(CLI::IsMember({"auto", "structured", "linear"}));
  auto* edist = era->add_subcommand("distance", "Exact minimum distance");
  edist->add_option("--layout", c.layout, "Layout JSON");
  edist->add_option("--matrix", c.matrix, "Parity-check matrix file");
  edist->add_option("--d-max", c.d_max, "Search depth limit");
  opt_expect.push_back(edist->add_option("--expect-d", expect_d, "Fail unless the distance equals this"));
  add_workers(edist);

  auto* gsd = app.add_subcommand("gsd", "Array placements and sector-disk sweeps");
  gsd->require_subcommand(1);
  auto* gbuild = gsd->add_subcommand("build", "Place a layout's coordinates in an array");
  gbuild->add_option("--layout", c.layout, "Layout JSON")->required();
  gbuild->add_option("--construction", c.construction, "2 (basic), 3 (rearranged) or 4 (truncated)");
  gbuild->add_option("--out", c.out, "Array JSON ('-' for stdout)");
  gbuild->add_option("--matrix-out", c.matrix_out, "Also write the parity-check matrix");
  auto* gchk = gsd->add_subcommand("check", "Sweep y columns plus gamma cells");
  gchk->add_option("--layout", c.layout, "Layout JSON");
  gchk->add_option("--matrix", c.matrix, "Parity-check matrix file");
  gchk->add_option("--array", c.array, "Array JSON");
  gchk->add_option("--rows", c.rows, "Rows of a column-major array over --matrix");
  gchk->add_option("--data-cols", c.data_cols, "Data columns of a column-major array");
  gchk->add_option("--y", c.y, "Erased columns");
  gchk->add_option("--gamma", c.gamma, "Further erased cells");
  gchk->add_flag("--all-columns", c.all_columns, "Allow parity columns among the erased columns");
  gchk->add_option("--d", c.d, "Minimum distance for the qualification test");
  add_sampling(gchk);
  add_workers(gchk);
  auto* gpar = gsd->add_subcommand("params", "Parameters and claims of the design-based families");
  std::string gfam = "ag";
  gpar->add_option("--family", gfam, "ag, pg, sg or packing")->check(CLI::IsMember({"ag", "pg", "sg", "packing"}));
  gpar->add_option("--q1", c.gsd.q1, "Order of the geometry field");
  gpar->add_option("--beta", c.gsd.beta, "Dimension");
  gpar->add_option("--prime-powers", c.gsd.prime_powers, "Field orders for packings")->delimiter(',');
  gpar->add_option("--e", c.gsd.e, "Block size for packings");
  gpar->add_option("--delta", c.gsd.delta, "Local distance");
  gpar->add_option("--v", c.gsd.v, "Information symbols in the last set");
  gpar->add_option("--y-max", c.gsd.y_max, "Largest y to report");

  auto* gop = app.add_subcommand("goppa", "Goppa-type LRCs");
  gop->require_subcommand(1);
  auto* gob = gop->add_subcommand("build", "Parity-check matrix from polynomial data");
  gob->add_option("--params", c.goppa, "Goppa JSON (field, G1, G2, sets, last)")->required();
  gob->add_flag("--splitting", c.splitting, "Cross-check against the splitting-field construction");
  gob->add_option("--out", c.out, "Matrix file ('-' for stdout)");
  auto* goc = gop->add_subcommand("check", "Dimension, locality and distance");
  goc->add_option("--params", c.goppa, "Goppa JSON")->required();
  goc->add_option("--t", c.t, "Overlap order t (t + 1 <= ell)");
  add_workers(goc);

  auto* bnd = app.add_subcommand("bounds", "Singleton-type and length bounds");
  bnd->require_subcommand(1);
  auto* bs = bnd->add_subcommand("singleton", "Singleton-type distance bound");
  auto* bl = bnd->add_subcommand("length", "Certified length bound for one a");
  auto* bc = bnd->add_subcommand("classify", "Optimality and length-bound check");
  for (auto* s : {bs, bc}) {
    s->add_option("--n", c.n)->required();
    s->add_option("--k", c.k)->required();
  }
  bl->add_option("--n", c.n, "Also compare this length with the bound");
  for (auto* s : {bs, bl, bc}) {
    s->add_option("--r", c.r)->required();
    s->add_option("--delta", c.delta)->required();
  }
  bl->add_option("--q", c.q)->required();
  bl->add_option("--h", c.h)->required();
  bl->add_option("--a", c.a);
  bc->add_option("--q", c.q)->required();
  bc->add_option("--d", c.bound_d)->required();

  auto* fix = app.add_subcommand("fixtures", "Bundled regression suite");
  fix->require_subcommand(1);
  auto* frun = fix->add_subcommand("run", "Run example1, example2, example3 or all");
  frun->add_option("targets", c.targets, "Fixtures to run")->check(CLI::IsMember({"example1", "example2", "example3", "all"}));
  seed_opts.push_back(frun->add_option("--seed", seed, "Seed for the sampled sweeps"));
  add_workers(frun);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    parsed.exit_code = app.exit(e, out, err) == 0 ? 0 : 2;
    return parsed;
  }

  for (auto* s : app.get_subcommands()) {
    c.command = s->get_name();
    for (auto* t : s->get_subcommands()) c.subcommand = t->get_name();
  }
  if (std::any_of(param_opts.begin(), param_opts.end(), [](CLI::Option* o) { return o->count() > 0; }))
    c.params = lp;
  if (opt_S->count() > 0) c.S = S;
  if (opt_weight->count() > 0) c.weight = weight;
  if (std::any_of(opt_expect.begin(), opt_expect.end(), [](CLI::Option* o) { return o->count() > 0; }))
    c.expect_d = expect_d;
  if (std::any_of(seed_opts.begin(), seed_opts.end(), [](CLI::Option* o) { return o->count() > 0; })) c.seed = seed;
  c.mode = mode == "exhaustive" ? Mode::Exhaustive : mode == "sampled" ? Mode::Sampled : Mode::Auto;
  c.workers = workers > 0 ? workers : env_workers();
  c.gsd.family = family_from_string(gfam);
  return parsed;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  auto parsed = parse_args(argc, argv, out, err);
  if (parsed.exit_code) return *parsed.exit_code;
  return run(parsed.config, out, err);
}

// Fixture suites ----------------------------------------------------------

json fixture_example1(unsigned workers) {
  Checks ch;
  ch.add("checksum", fixtures::fnv1a(fixtures::example1_text()) == fixtures::kExample1Checksum);
  const Matrix H = fixtures::example1_H();
  ch.add("dimensions", H.rows() == 10 && H.cols() == 24 && rank(H) == 10,
         {{"rows", H.rows()}, {"cols", H.cols()}});

  DistanceOptions opts;
  opts.workers = workers;
  const auto dist = min_distance(H, opts);
  ch.add("printed H: d = 5", dist.bounded && dist.d == 5, {{"d", dist.d}, {"witness", dist.witness}});

  const auto code = code_from_parity_check(H, repair_sets_from_rows(H, 3, 2));
  const auto loc = verify_locality(code);
  bool local2 = loc.sets.size() == 7;
  for (const auto& e : loc.sets) local2 = local2 && e.distance == 2;
  ch.add("printed H: repair sets have punctured distance 2", loc.ok && local2, to_json(loc));

  const auto sb = singleton_bound(24, 14, 2, 2);
  ch.add("singleton bound = 5", sb == 5, {{"d_singleton", sb}});
  ch.add("printed H: optimal", code.k == 14 && static_cast<std::int64_t>(dist.d) == sb, {{"k", code.k}});

  const auto L = fixtures::example1_layout();
  const auto built = build_code(L);
  const auto bd = min_distance(built.H, opts);
  ch.add("constructed: [24, 14]", built.n == 24 && built.k == 14);
  ch.add("constructed: d = 5", bd.bounded && bd.d == 5, {{"d", bd.d}, {"witness", bd.witness}});
  const auto bloc = verify_locality(built);
  ch.add("constructed: locality", bloc.ok, to_json(bloc));

  const auto lb = length_bound(11, 2, 2, 3, 0);
  ch.add("length bound floor = 198", lb.floor && *lb.floor == 198, to_json(lb));
  ch.add("n within length bound", lb.floor && 24 <= *lb.floor);
  return ch.report("example1");
}

json fixture_example2(unsigned workers) {
  Checks ch;
  ch.add("checksum", fixtures::fnv1a(fixtures::example2_text()) == fixtures::kExample2Checksum);
  const Matrix H = fixtures::example2_H();
  ch.add("dimensions", H.rows() == 10 && H.cols() == 24 && rank(H) == 10);
  const auto arr = column_major(24, 3, 7);

  GsdCheckOptions g;
  g.y = 2;
  g.gamma = 0;
  g.exhaustive_limit = kNoLimit;
  g.workers = workers;
  g.d = 5;
  const auto rep = gsd_check(arr, H, g);
  ch.add("all 21 two-column erasures recoverable", rep.tested == 21 && rep.passed == 21, to_json(rep));

  DistanceOptions opts;
  opts.workers = workers;
  const auto dist = min_distance(H, opts);
  ch.add("d = 5", dist.bounded && dist.d == 5, {{"d", dist.d}, {"witness", dist.witness}});
  ch.add("sector-disk condition 2*3 + 0 > d - 1", rep.qualifies && 2 * 3 + 0 > static_cast<int>(dist.d) - 1);

  const auto code = code_from_parity_check(H, repair_sets_from_rows(H, 3, 2));
  const auto loc = verify_locality(code);
  ch.add("locality", loc.ok && loc.sets.size() == 7, to_json(loc));
  return ch.report("example2");
}

json fixture_example3(unsigned workers, std::uint64_t seed) {
  Checks ch;
  const auto L = fixtures::example3_layout();
  ch.add("[657, 505] over F_79", L.n() == 657 && L.params.k() == 505 && L.field->q() == 79);
  const auto code = build_code(L);
  const auto arr = array_truncated(L);
  ch.add("9 x 73 array", arr.rows == 9 && arr.cols == 73 && arr.zero_fill() == 0);

  const auto loc = verify_locality(code);
  ch.add("locality on 73 repair sets", loc.ok && loc.sets.size() == 73, {{"information_rank", loc.info_rank}});

  const std::size_t d = L.params.h + L.params.delta;
  struct Sweep {
    const char* name;
    std::size_t y, gamma;
  };
  for (const Sweep s : {Sweep{"8 cells", 0, 8}, Sweep{"2 columns + 1 cell", 2, 1}, Sweep{"1 column + 3 cells", 1, 3}}) {
    GsdCheckOptions g;
    g.y = s.y;
    g.gamma = s.gamma;
    g.exhaustive_limit = 0;
    g.samples = 10'000;
    g.seed = seed;
    g.workers = workers;
    g.d = d;
    const auto rep = gsd_check(arr, code.H, g);
    ch.add(std::string("sampled sweep: ") + s.name, rep.ok() && rep.tested == 10'000, to_json(rep));
  }

  const auto br = classify(657, 505, 7, 3, static_cast<std::int64_t>(d), 79);
  ch.add("n within length bound", br.within_bound, to_json(br));

  GsdParamsInput in;
  in.family = Family::PG;
  in.q1 = 8;
  in.beta = 2;
  in.delta = 3;
  in.v = 1;
  const auto gp = gsd_params(in);
  ch.add("family parameters", gp.valid && gp.n == 657 && gp.k == 505 && gp.b == 9 && gp.cols == 73, to_json(gp));
  return ch.report("example3");
}

}  // namespace lrcw::cli
