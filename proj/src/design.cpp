#include "lrcw/design.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "lrcw/error.hpp"
#include "lrcw/field.hpp"
#include "lrcw/rng.hpp"

namespace lrcw {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

Field field_for(std::uint32_t q1) {
  auto [p, m] = prime_power(q1);
  require(p != 0, ErrorKind::InvalidParameter, std::to_string(q1) + " is not a prime power");
  return FiniteField::make(p, m);
}

void check_points(std::uint64_t n) {
  require(n <= 100'000, ErrorKind::InvalidParameter, "design has too many points for desk-scale use");
}

std::vector<std::vector<std::size_t>> dedup_sorted(std::set<std::vector<std::size_t>> s) {
  return {s.begin(), s.end()};
}

}  // namespace

Design ag_steiner(std::uint32_t q1, unsigned beta) {
  require(beta >= 2, ErrorKind::InvalidParameter, "beta must be >= 2");
  const Field f = field_for(q1);
  const std::uint64_t n = ipow(q1, beta);
  check_points(n);

  auto decode = [&](std::uint64_t label) {
    std::vector<Elem> v(beta);
    for (unsigned i = 0; i < beta; ++i) {
      v[i] = static_cast<Elem>(label % q1);
      label /= q1;
    }
    return v;
  };
  auto encode = [&](const std::vector<Elem>& v) {
    std::uint64_t label = 0;
    for (unsigned i = beta; i-- > 0;) label = label * q1 + v[i];
    return static_cast<std::size_t>(label);
  };

  // A line is fixed by a base point and a direction normalized to have first
  // nonzero coordinate 1.
  std::set<std::vector<std::size_t>> lines;
  for (std::uint64_t dir = 1; dir < n; ++dir) {
    const auto b = decode(dir);
    const auto lead = std::find_if(b.begin(), b.end(), [](Elem x) { return x != 0; });
    if (*lead != 1) continue;
    for (std::uint64_t base = 0; base < n; ++base) {
      const auto a = decode(base);
      std::vector<std::size_t> line;
      line.reserve(q1);
      for (Elem t = 0; t < q1; ++t) {
        std::vector<Elem> pt(beta);
        for (unsigned i = 0; i < beta; ++i) pt[i] = f->add(a[i], f->mul(t, b[i]));
        line.push_back(encode(pt));
      }
      std::sort(line.begin(), line.end());
      lines.insert(std::move(line));
    }
  }

  Design d;
  d.num_points = n;
  d.tau = 2;
  d.block_size = q1;
  d.blocks = dedup_sorted(std::move(lines));
  d.regularity = (n - 1) / (q1 - 1);
  d.steiner = true;
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto v = decode(i);
    std::ostringstream os;
    os << '(';
    for (unsigned k = 0; k < beta; ++k) os << (k ? "," : "") << v[k];
    os << ')';
    d.labels.push_back(os.str());
  }
  return d;
}

Design pg_steiner(std::uint32_t q1, unsigned beta) {
  require(beta >= 2, ErrorKind::InvalidParameter, "beta must be >= 2");
  const Field f = field_for(q1);
  const unsigned dim = beta + 1;
  const std::uint64_t total = ipow(q1, dim);
  const std::uint64_t n = (total - 1) / (q1 - 1);
  check_points(n);

  auto decode = [&](std::uint64_t code) {
    std::vector<Elem> v(dim);
    for (unsigned i = 0; i < dim; ++i) {
      v[i] = static_cast<Elem>(code % q1);
      code /= q1;
    }
    return v;
  };
  auto encode = [&](const std::vector<Elem>& v) {
    std::uint64_t code = 0;
    for (unsigned i = dim; i-- > 0;) code = code * q1 + v[i];
    return code;
  };
  auto normalize = [&](std::vector<Elem> v) {
    const auto lead = std::find_if(v.begin(), v.end(), [](Elem x) { return x != 0; });
    const Elem s = f->inv(*lead);
    for (auto& x : v) x = f->mul(x, s);
    return v;
  };

  // Points: normalized nonzero vectors (first nonzero coordinate 1), labeled in
  // increasing order of their integer code.
  std::vector<std::vector<Elem>> points;
  std::unordered_map<std::uint64_t, std::size_t> label_of;
  for (std::uint64_t code = 1; code < total; ++code) {
    auto v = decode(code);
    const auto lead = std::find_if(v.begin(), v.end(), [](Elem x) { return x != 0; });
    if (*lead != 1) continue;
    label_of.emplace(code, points.size());
    points.push_back(std::move(v));
  }

  std::set<std::vector<std::size_t>> lines;
  for (std::size_t u = 0; u < points.size(); ++u) {
    for (std::size_t w = u + 1; w < points.size(); ++w) {
      std::vector<std::size_t> line{u};
      for (Elem c = 0; c < q1; ++c) {
        std::vector<Elem> pt(dim);
        for (unsigned i = 0; i < dim; ++i) pt[i] = f->add(points[w][i], f->mul(c, points[u][i]));
        line.push_back(label_of.at(encode(normalize(std::move(pt)))));
      }
      std::sort(line.begin(), line.end());
      lines.insert(std::move(line));
    }
  }

  Design d;
  d.num_points = n;
  d.tau = 2;
  d.block_size = q1 + 1;
  d.blocks = dedup_sorted(std::move(lines));
  d.regularity = (ipow(q1, beta) - 1) / (q1 - 1);
  d.steiner = true;
  for (const auto& v : points) {
    std::ostringstream os;
    os << '[';
    for (unsigned k = 0; k < dim; ++k) os << (k ? ":" : "") << v[k];
    os << ']';
    d.labels.push_back(os.str());
  }
  return d;
}

Design sg_steiner(std::uint32_t q1, unsigned beta) {
  require(beta >= 2, ErrorKind::InvalidParameter, "beta must be >= 2");
  auto [p, m] = prime_power(q1);
  require(p != 0, ErrorKind::InvalidParameter, std::to_string(q1) + " is not a prime power");
  require(ipow(q1, beta) <= FiniteField::kMaxOrder, ErrorKind::InvalidParameter, "q1^beta exceeds 2^16");
  const Field big = FiniteField::make(p, m * beta);
  const Elem Q = big->q();
  const std::size_t inf = Q;
  check_points(Q + 1);

  std::vector<std::size_t> subline;
  for (Elem x = 0; x < Q; ++x)
    if (big->pow(x, q1) == x) subline.push_back(x);
  require(subline.size() == q1, ErrorKind::InternalInvariantViolation, "subfield size mismatch");
  subline.push_back(inf);

  auto apply = [&](Elem a, Elem b, Elem c, Elem dd, std::size_t x) -> std::size_t {
    if (x == inf) return c == 0 ? inf : static_cast<std::size_t>(big->div(a, c));
    const Elem xe = static_cast<Elem>(x);
    const Elem den = big->add(big->mul(c, xe), dd);
    if (den == 0) return inf;
    return big->div(big->add(big->mul(a, xe), b), den);
  };

  // Maps up to scalars: (a, b, 1, d) and (a, b, 0, 1).
  std::set<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> img(subline.size());
  auto add_image = [&](Elem a, Elem b, Elem c, Elem dd) {
    if (big->sub(big->mul(a, dd), big->mul(b, c)) == 0) return;
    for (std::size_t i = 0; i < subline.size(); ++i) img[i] = apply(a, b, c, dd, subline[i]);
    auto key = img;
    std::sort(key.begin(), key.end());
    blocks.insert(std::move(key));
  };
  for (Elem a = 0; a < Q; ++a)
    for (Elem b = 0; b < Q; ++b) {
      add_image(a, b, 0, 1);
      for (Elem dd = 0; dd < Q; ++dd) add_image(a, b, 1, dd);
    }

  Design d;
  d.num_points = Q + 1;
  d.tau = 3;
  d.block_size = q1 + 1;
  d.blocks = dedup_sorted(std::move(blocks));
  const std::uint64_t n = Q + 1;
  d.regularity = binomial(n - 1, 2) / binomial(q1, 2);
  d.steiner = true;
  for (Elem x = 0; x < Q; ++x) d.labels.push_back(std::to_string(x));
  d.labels.emplace_back("inf");
  return d;
}

Design cyclotomic_packing(const std::vector<std::uint32_t>& prime_powers, std::uint32_t e) {
  require(!prime_powers.empty(), ErrorKind::InvalidParameter, "need at least one prime power");
  require(e > 1, ErrorKind::InvalidParameter, "e must be > 1");
  std::vector<Field> fields;
  std::vector<std::uint32_t> primes;
  for (auto q : prime_powers) {
    auto [p, m] = prime_power(q);
    require(p != 0, ErrorKind::InvalidParameter, std::to_string(q) + " is not a prime power");
    require(std::find(primes.begin(), primes.end(), p) == primes.end(), ErrorKind::InvalidParameter,
            "prime powers must have distinct primes");
    require((q - 1) % e == 0, ErrorKind::InvalidParameter, "e must divide " + std::to_string(q) + " - 1");
    primes.push_back(p);
    fields.push_back(FiniteField::make(p, m));
  }
  const std::size_t u = fields.size();
  std::uint64_t n2 = 1;
  for (auto& f : fields) n2 *= f->q();
  check_points(n2 * e);

  auto encode_tuple = [&](const std::vector<Elem>& t) {
    std::uint64_t label = 0;
    for (std::size_t i = u; i-- > 0;) label = label * fields[i]->q() + t[i];
    return label;
  };
  auto decode_tuple = [&](std::uint64_t label) {
    std::vector<Elem> t(u);
    for (std::size_t i = 0; i < u; ++i) {
      t[i] = static_cast<Elem>(label % fields[i]->q());
      label /= fields[i]->q();
    }
    return t;
  };

  // beta_e^j components and alpha^J ranges.
  std::vector<std::uint32_t> class_count(u);
  for (std::size_t i = 0; i < u; ++i) class_count[i] = (fields[i]->q() - 1) / e;
  std::uint64_t num_J = 1;
  for (auto c : class_count) num_J *= c;

  Design d;
  d.num_points = static_cast<std::size_t>(e * n2);
  d.tau = 2;
  d.block_size = e;
  for (std::uint64_t jidx = 0; jidx < num_J; ++jidx) {
    std::vector<std::uint32_t> J(u);
    std::uint64_t rest = jidx;
    for (std::size_t i = 0; i < u; ++i) {
      J[i] = static_cast<std::uint32_t>(rest % class_count[i]);
      rest /= class_count[i];
    }
    // base[j] = alpha^J * beta_e^j, componentwise.
    std::vector<std::vector<Elem>> base(e, std::vector<Elem>(u));
    for (std::uint32_t j = 0; j < e; ++j)
      for (std::size_t i = 0; i < u; ++i)
        base[j][i] = fields[i]->exp(static_cast<std::uint64_t>(J[i]) + static_cast<std::uint64_t>(j) * class_count[i]);
    for (std::uint64_t eps = 0; eps < n2; ++eps) {
      const auto shift = decode_tuple(eps);
      std::vector<std::size_t> block;
      block.reserve(e);
      for (std::uint32_t j = 0; j < e; ++j) {
        std::vector<Elem> t(u);
        for (std::size_t i = 0; i < u; ++i) t[i] = fields[i]->add(base[j][i], shift[i]);
        block.push_back(static_cast<std::size_t>(j * n2 + encode_tuple(t)));
      }
      std::sort(block.begin(), block.end());
      d.blocks.push_back(std::move(block));
    }
  }
  std::uint64_t w = 1;
  for (auto c : class_count) w *= c;
  d.regularity = w;
  d.steiner = false;
  for (std::uint64_t label = 0; label < d.num_points; ++label) {
    const auto t = decode_tuple(label % n2);
    std::ostringstream os;
    os << '(' << label / n2 << ';';
    for (std::size_t i = 0; i < u; ++i) os << (i ? "," : "") << t[i];
    os << ')';
    d.labels.push_back(os.str());
  }
  return d;
}

DesignReport verify_design(const Design& d, std::uint64_t exhaustive_limit, std::uint64_t samples,
                           std::uint64_t seed) {
  DesignReport rep;
  const unsigned tau = d.tau;
  rep.well_formed = d.block_size >= tau && tau >= 1;
  for (const auto& b : d.blocks) {
    if (b.size() != d.block_size) rep.well_formed = false;
    std::vector<std::size_t> s = b;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) rep.well_formed = false;
    for (auto x : s)
      if (x >= d.num_points) rep.well_formed = false;
  }

  // Replication numbers.
  std::vector<std::size_t> replication(d.num_points, 0);
  for (const auto& b : d.blocks)
    for (auto x : b)
      if (x < d.num_points) ++replication[x];
  if (!replication.empty() &&
      std::all_of(replication.begin(), replication.end(), [&](std::size_t r) { return r == replication[0]; }))
    rep.regularity = replication[0];
  if (!rep.well_formed) return rep;

  const std::uint64_t inside = d.blocks.size() * binomial(d.block_size, tau);
  const std::uint64_t all_subsets = binomial(d.num_points, tau);
  if (inside <= exhaustive_limit) {
    // Count every tau-subset contained in some block.
    std::map<std::vector<std::size_t>, unsigned> seen;
    bool packing = true;
    std::vector<std::size_t> idx(tau);
    for (const auto& b : d.blocks) {
      std::vector<std::size_t> s = b;
      std::sort(s.begin(), s.end());
      for (unsigned i = 0; i < tau; ++i) idx[i] = i;
      while (true) {
        std::vector<std::size_t> key(tau);
        for (unsigned i = 0; i < tau; ++i) key[i] = s[idx[i]];
        if (++seen[key] > 1) packing = false;
        ++rep.subsets_checked;
        int i = static_cast<int>(tau) - 1;
        while (i >= 0 && idx[i] == s.size() - tau + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (unsigned k = i + 1; k < tau; ++k) idx[k] = idx[k - 1] + 1;
      }
    }
    rep.is_packing = packing;
    rep.is_steiner = packing && seen.size() == all_subsets;
    return rep;
  }

  // Sampled: random tau-subsets of points, counted against the incidence lists.
  rep.sampled = true;
  rep.seed = seed;
  std::vector<std::vector<std::size_t>> incident(d.num_points);
  for (std::size_t bi = 0; bi < d.blocks.size(); ++bi)
    for (auto x : d.blocks[bi]) incident[x].push_back(bi);
  Rng rng(seed);
  bool packing = true, steiner = true;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto pts = rng.distinct(d.num_points, tau);
    std::size_t covering = 0;
    for (auto bi : incident[pts[0]]) {
      const auto& b = d.blocks[bi];
      bool all = true;
      for (unsigned i = 1; i < tau && all; ++i) all = std::find(b.begin(), b.end(), pts[i]) != b.end();
      if (all) ++covering;
    }
    if (covering > 1) packing = false;
    if (covering != 1) steiner = false;
    ++rep.subsets_checked;
  }
  rep.is_packing = packing;
  rep.is_steiner = packing && steiner;
  return rep;
}

std::uint64_t johnson_bound(std::uint64_t n1, std::uint64_t t, std::uint64_t tau) {
  require(tau >= 1 && t >= tau + 1 && n1 >= t, ErrorKind::InvalidParameter,
          "johnson_bound needs n1 >= t >= tau + 1 >= 2");
  std::uint64_t value = (n1 - tau) / (t - tau);
  for (std::uint64_t i = tau; i-- > 0;) value = (n1 - i) * value / (t - i);
  return value;
}

void write_design(std::ostream& os, const Design& d) {
  os << d.num_points << ' ' << d.tau << ' ' << d.block_size << '\n';
  for (const auto& b : d.blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? " " : "") << b[i];
    os << '\n';
  }
}

Design read_design(std::istream& is) {
  Design d;
  std::string line;
  auto next = [&]() {
    while (std::getline(is, line)) {
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos != std::string::npos && line[pos] != '#') return true;
    }
    return false;
  };
  require(next(), ErrorKind::Parse, "empty design file");
  {
    std::istringstream hs(line);
    std::size_t n = 0;
    unsigned tau = 0, t = 0;
    require(static_cast<bool>(hs >> n >> tau >> t), ErrorKind::Parse, "expected 'n tau t'");
    d.num_points = n;
    d.tau = tau;
    d.block_size = t;
  }
  while (next()) {
    std::istringstream ls(line);
    std::vector<std::size_t> b;
    long long x;
    while (ls >> x) {
      require(x >= 0, ErrorKind::Parse, "negative point index");
      b.push_back(static_cast<std::size_t>(x));
    }
    require(ls.eof(), ErrorKind::Parse, "bad token in block line");
    std::sort(b.begin(), b.end());
    d.blocks.push_back(std::move(b));
  }
  return d;
}

}  // namespace lrcw
