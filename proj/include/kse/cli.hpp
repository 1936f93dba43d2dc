#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "kse/budgets.hpp"
#include "kse/bundles.hpp"
#include "kse/cache.hpp"
#include "kse/errors.hpp"
#include "kse/euler.hpp"
#include "kse/field.hpp"
#include "kse/flags_count.hpp"
#include "kse/json_io.hpp"
#include "kse/quiver_rep.hpp"
#include "kse/resolutions.hpp"
#include "kse/rng.hpp"
#include "kse/splitting.hpp"
#include "kse/tableaux.hpp"
#include "kse/weights.hpp"

namespace kse {
namespace cli {

// ---------- shared options ----------

struct Common {
  std::string format;  // "json" or "csv"; empty means the per-command default
  std::uint64_t budget_weyl = Budgets{}.weyl;
  long long budget_partition = Budgets{}.partition_level;
  std::uint64_t budget_enum = Budgets{}.enumeration;
  std::string cache_path;
  std::uint64_t seed = 0;
  int threads = 1;

  Budgets budgets() const {
    Budgets b;
    b.weyl = budget_weyl;
    b.partition_level = budget_partition;
    b.enumeration = budget_enum;
    return b;
  }
};

inline void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--budget-weyl", c.budget_weyl, "max Weyl group elements enumerated");
  sub->add_option("--budget-partition", c.budget_partition, "max phi-level in partition counts");
  sub->add_option("--budget-enum", c.budget_enum, "max states in brute enumerations");
  sub->add_option("--cache", c.cache_path, "append-only JSON-lines result cache");
  sub->add_option("--seed", c.seed, "PRNG seed, recorded in every output");
  sub->add_option("--threads", c.threads, "worker threads for sweeps and Weyl sums")
      ->check(CLI::PositiveNumber);
}

inline std::string resolve_format(const Common& c, const std::string& dflt) {
  return c.format.empty() ? dflt : c.format;
}

// ---------- output plumbing ----------

inline std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

inline std::string csv_cell(const OJson& v) {
  if (v.is_string()) return csv_quote(v.get<std::string>());
  return v.dump();
}

inline std::string job_key(const OJson& fields) {
  std::string d = fields.dump();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a_str(d)));
  return std::string(buf);
}

// Compute-or-reuse: the cache stores the JSON record verbatim, so a hit is
// rendered exactly like a fresh result in either format.
inline void emit_record(const Common& c, const std::string& fmt, const OJson& key_fields,
                        const std::function<OJson()>& make,
                        const std::function<std::string(const OJson&)>& to_csv,
                        std::ostream& out, std::ostream& err) {
  std::string dump;
  if (!c.cache_path.empty()) {
    ResultCache cache(c.cache_path, err);
    std::string key = job_key(key_fields);
    if (auto hit = cache.lookup(key)) {
      dump = *hit;
    } else {
      dump = make().dump();
      cache.append(key, dump);
    }
  } else {
    dump = make().dump();
  }
  if (fmt == "csv")
    out << to_csv(OJson::parse(dump));
  else
    out << dump << "\n";
}

// ---------- bundle and grid construction ----------

struct BundleOpts {
  std::string bundle;  // fi | classical | full | diagram
  int r = 0;
  int N = 0;
  std::string quiver;
  std::string sub = "all";
};

struct QuiverChoice {
  Quiver q;
  bool cyclic = false;
  int size = 0;  // vertex count
};

inline int parse_int_strict(const std::string& s, const std::string& what) {
  if (s.empty()) throw ValidationError(what + " is empty");
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw ValidationError(what + " '" + s + "' is not a number");
  return std::stoi(s);
}

// "a3", "a3:fb", "cyclic:2"; the optional :f/b string orients each path edge
inline QuiverChoice parse_quiver_string(const std::string& s, const std::string& sub) {
  QuiverChoice out;
  if (s.rfind("cyclic:", 0) == 0) {
    int r = parse_int_strict(s.substr(7), "cyclic quiver size");
    out.q = cyclic_quiver(r);
    out.cyclic = true;
    out.size = r;
  } else if (!s.empty() && (s[0] == 'a' || s[0] == 'A')) {
    std::string head = s, orient;
    auto colon = s.find(':');
    if (colon != std::string::npos) {
      head = s.substr(0, colon);
      orient = s.substr(colon + 1);
    }
    int n = parse_int_strict(head.substr(1), "path quiver size");
    std::vector<bool> fwd(std::max(0, n - 1), true);
    if (!orient.empty()) {
      if (static_cast<int>(orient.size()) != n - 1)
        throw ValidationError("orientation '" + orient + "' needs one f/b per edge");
      for (int i = 0; i + 1 < n; ++i) {
        if (orient[i] == 'f') fwd[i] = true;
        else if (orient[i] == 'b') fwd[i] = false;
        else throw ValidationError("orientation characters must be f or b");
      }
    }
    out.q = linear_quiver(n, fwd);
    out.size = n;
  } else {
    throw ValidationError("unknown quiver '" + s + "': use aK, aK:fb..., or cyclic:R");
  }
  if (sub == "all") {
    for (auto& a : out.q.arrows) a.in_sub = true;
  } else if (sub == "none") {
    for (auto& a : out.q.arrows) a.in_sub = false;
  } else {
    if (sub.size() != out.q.arrows.size())
      throw ValidationError("sub-quiver mask needs one 0/1 per arrow");
    for (std::size_t i = 0; i < sub.size(); ++i) {
      if (sub[i] != '0' && sub[i] != '1')
        throw ValidationError("sub-quiver mask characters must be 0 or 1");
      out.q.arrows[i].in_sub = sub[i] == '1';
    }
  }
  return out;
}

inline BundleSpec make_bundle(const BundleOpts& o) {
  if (o.bundle == "fi") return bundle_fi(o.r, o.N);
  if (o.bundle == "full") return bundle_full(o.r, o.N);
  if (o.bundle == "classical") return bundle_classical(o.N);
  if (o.bundle == "diagram") {
    if (o.quiver.empty()) throw ValidationError("--bundle diagram needs --quiver");
    return bundle_from_diagram(parse_quiver_string(o.quiver, o.sub).q, o.N);
  }
  throw ValidationError("unknown bundle family '" + o.bundle + "'");
}

// JSON fields identifying the bundle, in a fixed order
inline void bundle_fields(OJson& rec, const BundleOpts& o) {
  rec["bundle"] = o.bundle;
  if (o.bundle == "fi" || o.bundle == "full") rec["r"] = o.r;
  rec["N"] = o.N;
  if (o.bundle == "diagram") {
    rec["quiver"] = o.quiver;
    rec["sub"] = o.sub;
  }
}

namespace detail {

inline void wd_tuples(int len, Coord maxe, Weight& cur, std::vector<Weight>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  Coord hi = cur.empty() ? maxe : cur.back();
  for (Coord v = 0; v <= hi; ++v) {
    cur.push_back(v);
    wd_tuples(len, maxe, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

// every dominant weight with entries in [0, maxe], ascending lex order
inline std::vector<Weight> dominant_grid(const Blocks& b, Coord maxe) {
  if (maxe < 0) throw ValidationError("--max-entry must be >= 0");
  std::vector<std::vector<Weight>> per(b.count());
  for (int v = 0; v < b.count(); ++v) {
    Weight cur;
    detail::wd_tuples(b.dims[v], maxe, cur, per[v]);
  }
  std::vector<Weight> out;
  std::vector<std::size_t> idx(per.size(), 0);
  for (;;) {
    Weight w;
    for (std::size_t v = 0; v < per.size(); ++v)
      w.insert(w.end(), per[v][idx[v]].begin(), per[v][idx[v]].end());
    out.push_back(std::move(w));
    int v = static_cast<int>(per.size()) - 1;
    while (v >= 0 && ++idx[v] == per[v].size()) {
      idx[v] = 0;
      --v;
    }
    if (v < 0) break;
  }
  return out;
}

// all partitions of wsum with at most N parts, zero padded, ascending lex
inline std::vector<Weight> classical_grid(int N, int wsum) {
  if (wsum < 0) throw ValidationError("classical sweeps need --weight-sum >= 0");
  std::vector<Weight> out;
  for (const auto& p : partitions_of(wsum))
    if (static_cast<int>(p.size()) <= N) out.push_back(pad_partition(p, N));
  std::sort(out.begin(), out.end());
  return out;
}

inline Partition strip_weight(const Weight& w) {
  Partition p;
  for (Coord c : w) {
    if (c < 0) throw ValidationError("partition entries must be nonnegative");
    if (c > 0) p.push_back(static_cast<int>(c));
  }
  return p;
}

// ---------- representation parsing ----------

struct RepTerm {
  char kind = 'S';  // 'S' simple, 'U' uniserial S_i[l], 'I' interval I_u-v
  int a = 0;        // vertex or left end, 1-based as written
  int b = 0;        // length or right end
  int mult = 1;
};

inline std::vector<RepTerm> parse_rep_terms(const std::string& s) {
  std::vector<RepTerm> out;
  std::size_t i = 0;
  auto fail = [&]() -> void { throw ValidationError("cannot parse representation '" + s + "'"); };
  auto num = [&]() -> int {
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail();
    long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > 1000000) fail();
      ++i;
    }
    return static_cast<int>(v);
  };
  auto expect = [&](char ch) {
    if (i >= s.size() || s[i] != ch) fail();
    ++i;
  };
  if (s.empty()) fail();
  for (;;) {
    RepTerm t;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      t.mult = num();
      if (t.mult < 1) fail();
      expect('*');
    }
    if (i >= s.size()) fail();
    if (s[i] == 'S') {
      ++i;
      t.a = num();
      if (i < s.size() && s[i] == '[') {
        ++i;
        t.kind = 'U';
        t.b = num();
        expect(']');
      } else {
        t.kind = 'S';
      }
    } else if (s[i] == 'I') {
      ++i;
      t.kind = 'I';
      t.a = num();
      expect('-');
      t.b = num();
    } else {
      fail();
    }
    out.push_back(t);
    if (i == s.size()) break;
    expect('+');
  }
  return out;
}

inline std::vector<IntervalMult> terms_to_intervals(const std::vector<RepTerm>& terms, int n) {
  std::vector<IntervalMult> parts;
  for (const auto& t : terms) {
    IntervalMult im;
    im.mult = t.mult;
    if (t.kind == 'S') {
      im.u = im.v = t.a - 1;
    } else if (t.kind == 'I') {
      im.u = std::min(t.a, t.b) - 1;
      im.v = std::max(t.a, t.b) - 1;
    } else {
      throw ValidationError("uniserial shorthand S_i[l] needs a cyclic quiver");
    }
    if (im.u < 0 || im.v >= n)
      throw ValidationError("interval endpoints must lie between 1 and the vertex count");
    parts.push_back(im);
  }
  return parts;
}

inline QuiverRep terms_to_cyclic_rep(const std::vector<RepTerm>& terms, int r) {
  QuiverRep acc = zero_rep(cyclic_quiver(r), std::vector<int>(r, 0));
  for (const auto& t : terms) {
    int len = 1;
    int vtx = t.a;
    if (t.kind == 'U') len = t.b;
    else if (t.kind == 'I') throw ValidationError("interval shorthand I_u-v needs a path quiver");
    if (vtx < 1 || vtx > r)
      throw ValidationError("vertex index must lie between 1 and the cycle length");
    if (len < 1) throw ValidationError("uniserial length must be positive");
    QuiverRep piece = cyclic_uniserial(r, vtx - 1, len);
    for (int m = 0; m < t.mult; ++m) acc = direct_sum(acc, piece);
  }
  return acc;
}

// ---------- compute ----------

struct ComputeParams {
  BundleOpts b;
  std::string lambda, mu;
  long long window = -1;  // >= 0 switches to the truncated-expansion mode
  bool check = false;
};

inline OJson compute_key(const ComputeParams& p, const Common& c) {
  OJson k;
  k["command"] = "compute";
  bundle_fields(k, p.b);
  if (p.window >= 0) k["window"] = p.window;
  else k["lambda"] = p.lambda;
  k["mu"] = p.mu;
  k["check"] = p.check;
  k["seed"] = c.seed;
  return k;
}

inline OJson compute_record(const ComputeParams& p, const Common& c) {
  BundleSpec spec = make_bundle(p.b);
  Budgets bud = c.budgets();
  Weight mu = parse_weight(p.mu, spec.blocks);
  OJson rec;
  rec["schema"] = "kse-1";
  rec["command"] = "compute";
  bundle_fields(rec, p.b);
  if (p.window >= 0) {
    rec["window"] = p.window;
    rec["mu"] = format_weight(mu, spec.blocks);
    rec["seed"] = c.seed;
    rec["vars"] = spec.varnames;
    auto dec = euler_decompose(spec, mu, p.window, bud);
    const auto& phi = require_pointed(spec.gens);
    OJson entries = OJson::array();
    for (const auto& [lam, poly] : dec) {
      OJson e;
      e["lambda"] = format_weight(lam, spec.blocks);
      e["level"] = dot(phi, sub(lam, mu));
      e["poly"] = poly_to_json(poly);
      entries.push_back(std::move(e));
    }
    rec["entries"] = std::move(entries);
    return rec;
  }
  if (p.lambda.empty()) throw ValidationError("compute needs --lambda or --window");
  Weight lambda = parse_weight(p.lambda, spec.blocks);
  Poly poly = kostka_kostant(spec, lambda, mu, bud, c.threads);
  if (p.check) {
    const auto& phi = require_pointed(spec.gens);
    Coord lv = dot(phi, sub(lambda, mu));
    Poly want = Poly::zero(spec.gens.nvars);
    if (lv >= 0) {
      auto dec = euler_decompose(spec, mu, lv, bud);
      auto it = dec.find(lambda);
      if (it != dec.end()) want = it->second;
    }
    if (want != poly)
      throw InternalError("engine disagreement: alternating sum and truncated expansion differ at lambda=" +
                          format_weight(lambda, spec.blocks) + " mu=" + format_weight(mu, spec.blocks));
  }
  rec["lambda"] = format_weight(lambda, spec.blocks);
  rec["mu"] = format_weight(mu, spec.blocks);
  rec["seed"] = c.seed;
  rec["vars"] = spec.varnames;
  rec["poly"] = poly_to_json(poly);
  return rec;
}

inline std::string compute_csv(const OJson& rec) {
  std::vector<std::string> vars = rec["vars"].get<std::vector<std::string>>();
  std::ostringstream os;
  if (rec.contains("entries")) {
    os << "lambda,level,poly\n";
    for (const auto& e : rec["entries"]) {
      Poly p = poly_from_json(e["poly"], static_cast<int>(vars.size()));
      os << csv_quote(e["lambda"].get<std::string>()) << "," << e["level"].get<long long>() << ","
         << csv_quote(p.to_string(vars)) << "\n";
    }
    return os.str();
  }
  Poly p = poly_from_json(rec["poly"], static_cast<int>(vars.size()));
  os << "lambda,mu,poly\n";
  os << csv_quote(rec["lambda"].get<std::string>()) << "," << csv_quote(rec["mu"].get<std::string>())
     << "," << csv_quote(p.to_string(vars)) << "\n";
  return os.str();
}

// ---------- sweep-positivity ----------

struct SweepParams {
  BundleOpts b;
  long long max_entry = 1;
  long long weight_sum = -1;
  bool check = false;
};

inline OJson sweep_key(const SweepParams& p, const Common& c) {
  OJson k;
  k["command"] = "sweep-positivity";
  bundle_fields(k, p.b);
  if (p.b.bundle == "classical") k["weight_sum"] = p.weight_sum;
  else k["max_entry"] = p.max_entry;
  k["check"] = p.check;
  k["seed"] = c.seed;
  return k;
}

inline OJson sweep_record(const SweepParams& p, const Common& c) {
  BundleSpec spec = make_bundle(p.b);
  const Blocks& blocks = spec.blocks;
  Budgets bud = c.budgets();
  bool classical = spec.family == "classical";
  bool diagram = spec.family == "diagram";
  std::vector<Weight> grid = classical ? classical_grid(p.b.N, static_cast<int>(p.weight_sum))
                                       : dominant_grid(blocks, p.max_entry);
  ShiftData sd = panyushev_shift(spec);
  Weight shift = sub(sd.fiber_sum, sd.nilradical_sum);

  const std::size_t G = grid.size();
  const std::size_t total = G * G;
  std::vector<Poly> polys(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr eptr = nullptr;
  std::mutex emu;
  auto work = [&]() {
    try {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= total) break;
        polys[i] = kostka_kostant(spec, grid[i / G], grid[i % G], bud, 1);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(emu);
      if (!eptr) eptr = std::current_exception();
      next.store(total);
    }
  };
  int T = std::max(1, c.threads);
  if (T == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(T);
    for (int t = 0; t < T; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (eptr) std::rethrow_exception(eptr);

  if (p.check) {
    const auto& phi = require_pointed(spec.gens);
    for (std::size_t j = 0; j < G; ++j) {
      Coord cap = 0;
      for (std::size_t i = 0; i < G; ++i) cap = std::max(cap, dot(phi, sub(grid[i], grid[j])));
      auto dec = euler_decompose(spec, grid[j], cap, bud);
      for (std::size_t i = 0; i < G; ++i) {
        Poly want = Poly::zero(spec.gens.nvars);
        auto it = dec.find(grid[i]);
        if (it != dec.end() && dot(phi, sub(grid[i], grid[j])) >= 0) want = it->second;
        if (want != polys[i * G + j])
          throw InternalError("engine disagreement: alternating sum and truncated expansion differ at lambda=" +
                              format_weight(grid[i], blocks) + " mu=" + format_weight(grid[j], blocks));
      }
    }
  }

  OJson columns = OJson::array({"lambda", "mu", "poly", "nonneg", "shift_dom", "shift_dom_rho"});
  if (classical) {
    columns.push_back("charge");
    columns.push_back("charge_eq");
  }
  OJson rows = OJson::array();
  long long negatives = 0, violations = 0;
  for (std::size_t i = 0; i < G; ++i) {
    for (std::size_t j = 0; j < G; ++j) {
      const Poly& poly = polys[i * G + j];
      bool nonneg = poly.has_nonneg_coeffs();
      Weight shifted = sub(grid[j], shift);
      bool sdom = is_dominant(shifted, blocks);
      bool sdomr = is_dominant(sub(shifted, sd.rho_p), blocks);
      OJson row = OJson::array();
      row.push_back(format_weight(grid[i], blocks));
      row.push_back(format_weight(grid[j], blocks));
      row.push_back(poly.to_string(spec.varnames));
      row.push_back(nonneg ? 1 : 0);
      row.push_back(sdom ? 1 : 0);
      row.push_back(sdomr ? 1 : 0);
      bool bad = !nonneg;
      if (classical) {
        Partition lam = strip_weight(grid[i]);
        Partition mup = strip_weight(grid[j]);
        Poly charge = (lam.empty() && mup.empty()) ? Poly::constant(1, 1) : kostka_charge(lam, mup);
        bool eq = charge == poly;
        row.push_back(charge.to_string(spec.varnames));
        row.push_back(eq ? 1 : 0);
        bad = bad || !eq;
      }
      if (diagram) bad = !nonneg && sdomr;
      negatives += nonneg ? 0 : 1;
      violations += bad ? 1 : 0;
      rows.push_back(std::move(row));
    }
  }

  OJson rec;
  rec["schema"] = "kse-1";
  rec["command"] = "sweep-positivity";
  bundle_fields(rec, p.b);
  if (classical) rec["weight_sum"] = p.weight_sum;
  else rec["max_entry"] = p.max_entry;
  rec["check"] = p.check;
  rec["seed"] = c.seed;
  rec["vars"] = spec.varnames;
  rec["columns"] = std::move(columns);
  rec["rows"] = std::move(rows);
  OJson summary;
  summary["rows"] = static_cast<long long>(total);
  summary["negatives"] = negatives;
  summary["violations"] = violations;
  rec["summary"] = std::move(summary);
  return rec;
}

inline std::string sweep_csv(const OJson& rec) {
  std::ostringstream os;
  bool first = true;
  for (const auto& col : rec["columns"]) {
    if (!first) os << ",";
    os << col.get<std::string>();
    first = false;
  }
  os << "\n";
  for (const auto& row : rec["rows"]) {
    first = true;
    for (const auto& cell : row) {
      if (!first) os << ",";
      os << csv_cell(cell);
      first = false;
    }
    os << "\n";
  }
  const auto& s = rec["summary"];
  os << "summary,rows=" << s["rows"].get<long long>() << ",negatives=" << s["negatives"].get<long long>()
     << ",violations=" << s["violations"].get<long long>() << "\n";
  return os.str();
}

// ---------- flags ----------

struct FlagsParams {
  int r = 2, N = 2;
  std::string point = "regnilp";
  long long field = 2;
  std::string type = "D1";
};

inline OJson flags_key(const FlagsParams& p, const Common& c) {
  OJson k;
  k["command"] = "flags";
  k["r"] = p.r;
  k["N"] = p.N;
  k["point"] = p.point;
  k["field"] = p.field;
  k["type"] = p.type;
  k["seed"] = c.seed;
  return k;
}

inline OJson flags_record(const FlagsParams& p, const Common& c) {
  if (p.field != 2 && p.field != 3 && p.field != 5)
    throw ValidationError("flag counting supports fields of size 2, 3, or 5");
  if (p.r < 1 || p.N < 1) throw ValidationError("need r >= 1 and N >= 1");
  Rng rng(c.seed);
  CyclicPoint pt;
  if (p.point == "regnilp") pt = regular_nilpotent_point(p.r, p.N, p.field, rng);
  else if (p.point == "ssreg") pt = random_semisimple_regular(p.r, p.N, p.field, rng);
  else if (p.point == "random") pt = random_point(p.r, p.N, p.field, rng);
  else throw ValidationError("--point must be regnilp, ssreg, or random");
  FlagKind kind;
  if (p.type == "D0") kind = FlagKind::D0;
  else if (p.type == "D1") kind = FlagKind::D1;
  else throw ValidationError("--type must be D0 or D1");
  long long count = count_invariant_flags(pt, kind, c.budgets());
  OJson rec;
  rec["schema"] = "kse-1";
  rec["command"] = "flags";
  rec["r"] = p.r;
  rec["N"] = p.N;
  rec["point"] = p.point;
  rec["field"] = p.field;
  rec["type"] = p.type;
  rec["seed"] = c.seed;
  rec["count"] = count;
  return rec;
}

inline std::string flags_csv(const OJson& rec) {
  std::ostringstream os;
  os << "r,N,point,field,type,seed,count\n";
  os << rec["r"].get<long long>() << "," << rec["N"].get<long long>() << ","
     << rec["point"].get<std::string>() << "," << rec["field"].get<long long>() << ","
     << rec["type"].get<std::string>() << "," << rec["seed"].get<std::uint64_t>() << ","
     << rec["count"].get<long long>() << "\n";
  return os.str();
}

// ---------- resolve ----------

struct ResolveParams {
  std::string quiver;
  std::string rep;       // shorthand like "S1+S2", "I1-2", "S1[2]"
  std::string rep_file;  // JSON description
  long long field = 0;   // 0 = exact rationals
};

inline OJson load_rep_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open representation file " + path);
  OJson j = OJson::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ValidationError("representation file " + path + " is not a JSON object");
  return j;
}

struct ResolveOutcome {
  std::vector<int> dims;
  FlagType ft;
  FinitenessReport report;
};

template <class Ctx>
ResolveOutcome resolve_with_ctx(const Ctx& ctx, const QuiverChoice& qc, const std::string& rep_str,
                                const OJson* rep_json) {
  ResolveOutcome out;
  QuiverRep rep;
  if (rep_json && rep_json->contains("dims")) {
    if (!qc.cyclic) throw ValidationError("raw matrix representations are only supported on cyclic quivers");
    rep.q = qc.q;
    rep.dims = (*rep_json)["dims"].get<std::vector<int>>();
    if (!rep_json->contains("mats") || !(*rep_json)["mats"].is_array())
      throw ValidationError("raw representation needs a mats array");
    for (const auto& m : (*rep_json)["mats"]) rep.mats.push_back(m.get<std::vector<long long>>());
    validate_rep(rep);
  } else {
    std::vector<RepTerm> terms;
    if (rep_json) {
      auto push_terms = [&](const char* key, char kind) {
        if (!rep_json->contains(key)) return;
        for (const auto& e : (*rep_json)[key]) {
          RepTerm t;
          t.kind = kind;
          t.mult = e.value("mult", 1);
          if (kind == 'U') {
            t.a = e.at("i").get<int>();
            t.b = e.value("l", 1);
            if (t.b == 1) t.kind = 'S';
          } else {
            t.a = e.at("u").get<int>();
            t.b = e.at("v").get<int>();
          }
          if (t.mult < 1) throw ValidationError("multiplicities must be positive");
          terms.push_back(t);
        }
      };
      push_terms("S", 'U');
      push_terms("I", 'I');
      if (terms.empty()) throw ValidationError("representation file lists no summands");
    } else {
      terms = parse_rep_terms(rep_str);
    }
    if (qc.cyclic) {
      for (auto& t : terms)
        if (t.kind == 'S') { t.kind = 'U'; t.b = 1; }
      rep = terms_to_cyclic_rep(terms, qc.size);
    } else {
      auto parts = terms_to_intervals(terms, qc.size);
      out.ft = reineke_flagtype(qc.q, parts);
      rep = rep_from_intervals(qc.q, parts);
      out.dims = rep.dims;
      out.report = generic_finiteness_over(ctx, out.ft, rep);
      return out;
    }
  }
  out.ft = schiffmann_flagtype_over(ctx, rep);
  out.dims = rep.dims;
  out.report = generic_finiteness_over(ctx, out.ft, rep);
  return out;
}

inline OJson resolve_key(const ResolveParams& p, const Common& c, const OJson* rep_json) {
  OJson k;
  k["command"] = "resolve";
  k["quiver"] = p.quiver;
  if (rep_json) k["rep_json"] = *rep_json;
  else k["rep"] = p.rep;
  k["field"] = p.field;
  k["seed"] = c.seed;
  return k;
}

inline OJson resolve_record(const ResolveParams& p, const Common& c, const OJson* rep_json) {
  QuiverChoice qc = parse_quiver_string(p.quiver, "all");
  ResolveOutcome out;
  if (p.field == 0) {
    out = resolve_with_ctx(QCtx{}, qc, p.rep, rep_json);
  } else {
    FpCtx ctx(p.field);
    out = resolve_with_ctx(ctx, qc, p.rep, rep_json);
  }
  OJson rec;
  rec["schema"] = "kse-1";
  rec["command"] = "resolve";
  rec["quiver"] = p.quiver;
  rec["rep"] = rep_json ? rep_json->dump() : p.rep;
  rec["field"] = p.field;
  rec["seed"] = c.seed;
  rec["dims"] = out.dims;
  OJson iv = OJson::array(), av = OJson::array();
  for (const auto& st : out.ft.steps) {
    iv.push_back(st.vertex + 1);
    av.push_back(st.jump);
  }
  rec["i"] = std::move(iv);
  rec["a"] = std::move(av);
  rec["dim_bundle"] = out.report.dim_bundle;
  rec["dim_orbit"] = out.report.dim_orbit;
  rec["equal"] = out.report.equal;
  return rec;
}

inline std::string join_ints(const OJson& arr) {
  std::ostringstream os;
  bool first = true;
  for (const auto& v : arr) {
    if (!first) os << " ";
    os << v.get<long long>();
    first = false;
  }
  return os.str();
}

inline std::string resolve_csv(const OJson& rec) {
  std::ostringstream os;
  os << "quiver,rep,dims,i,a,dim_bundle,dim_orbit,equal\n";
  os << csv_quote(rec["quiver"].get<std::string>()) << "," << csv_quote(rec["rep"].get<std::string>())
     << "," << csv_quote(join_ints(rec["dims"])) << "," << csv_quote(join_ints(rec["i"])) << ","
     << csv_quote(join_ints(rec["a"])) << "," << rec["dim_bundle"].get<long long>() << ","
     << rec["dim_orbit"].get<long long>() << "," << (rec["equal"].get<bool>() ? 1 : 0) << "\n";
  return os.str();
}

// ---------- verify ----------

struct VerifyParams {
  std::string what;
  long long trials = 200;
  long long prime = -1;  // resolved per mode; 0 = exact rationals
  int r = 2, N = 2;
};

inline OJson verify_key(const VerifyParams& p, const Common& c) {
  OJson k;
  k["command"] = "verify";
  k["what"] = p.what;
  if (p.what == "splitting") {
    k["r"] = p.r;
    k["N"] = p.N;
  }
  k["trials"] = p.trials;
  k["prime"] = p.prime;
  k["seed"] = c.seed;
  return k;
}

template <class Ctx>
long long run_mk_trials(const Ctx& ctx, long long trials, long long bound, Rng& rng) {
  long long failures = 0;
  for (long long t = 0; t < trials; ++t) {
    int N = 2 + static_cast<int>(rng.below(4));
    int rr = 1 + static_cast<int>(rng.below(N));
    auto g = random_lower_unipotent(ctx, N, rng, bound);
    auto M = random_zero_block(ctx, N, rr, rng, bound);
    if (!mk_identity_check(ctx, g, M, rr)) ++failures;
  }
  return failures;
}

template <class Ctx>
void run_splitting_trials(const Ctx& ctx, const VerifyParams& p, long long bound, Rng& rng,
                          long long& failures, long long& vacuous, long long& active) {
  for (long long t = 0; t < p.trials; ++t) {
    std::vector<Mat<Ctx>> xs, gs;
    for (int s = 0; s + 1 < p.r; ++s) xs.push_back(random_upper_invertible(ctx, p.N, rng, bound));
    xs.push_back(random_strict_upper(ctx, p.N, rng, bound));
    for (int s = 0; s < p.r; ++s)
      gs.push_back(mat_mul(ctx, random_lower_unipotent(ctx, p.N, rng, bound),
                           random_upper_invertible(ctx, p.N, rng, bound)));
    if (ctx.is_zero(splitting_minor(ctx, gs, xs))) ++vacuous;
    else ++active;
    if (!splitting_locus_check(ctx, gs, xs)) ++failures;
  }
}

inline OJson verify_record(const VerifyParams& p, const Common& c) {
  Rng rng(c.seed);
  OJson rec;
  rec["schema"] = "kse-1";
  rec["command"] = "verify";
  rec["what"] = p.what;
  if (p.trials < 1) throw ValidationError("--trials must be positive");
  if (p.what == "mk-lemma") {
    long long prime = p.prime < 0 ? 101 : p.prime;
    long long failures = 0;
    if (prime == 0) {
      failures = run_mk_trials(QCtx{}, p.trials, 5, rng);
    } else {
      FpCtx ctx(prime);
      failures = run_mk_trials(ctx, p.trials, prime - 1, rng);
    }
    rec["trials"] = p.trials;
    rec["prime"] = prime;
    rec["seed"] = c.seed;
    rec["failures"] = failures;
    return rec;
  }
  if (p.what == "splitting") {
    long long prime = p.prime < 0 ? 7 : p.prime;
    if (p.r < 1 || p.N < 1) throw ValidationError("need r >= 1 and N >= 1");
    long long failures = 0, vacuous = 0, active = 0;
    if (prime == 0) {
      run_splitting_trials(QCtx{}, p, 3, rng, failures, vacuous, active);
    } else {
      FpCtx ctx(prime);
      run_splitting_trials(ctx, p, prime - 1, rng, failures, vacuous, active);
    }
    rec["r"] = p.r;
    rec["N"] = p.N;
    rec["trials"] = p.trials;
    rec["prime"] = prime;
    rec["seed"] = c.seed;
    rec["failures"] = failures;
    rec["vacuous"] = vacuous;
    rec["active"] = active;
    return rec;
  }
  throw ValidationError("verify target must be mk-lemma or splitting");
}

inline std::string verify_csv(const OJson& rec) {
  std::ostringstream os;
  if (rec["what"].get<std::string>() == "splitting") {
    os << "what,r,N,trials,prime,seed,failures,vacuous,active\n";
    os << rec["what"].get<std::string>() << "," << rec["r"].get<long long>() << ","
       << rec["N"].get<long long>() << "," << rec["trials"].get<long long>() << ","
       << rec["prime"].get<long long>() << "," << rec["seed"].get<std::uint64_t>() << ","
       << rec["failures"].get<long long>() << "," << rec["vacuous"].get<long long>() << ","
       << rec["active"].get<long long>() << "\n";
    return os.str();
  }
  os << "what,trials,prime,seed,failures\n";
  os << rec["what"].get<std::string>() << "," << rec["trials"].get<long long>() << ","
     << rec["prime"].get<long long>() << "," << rec["seed"].get<std::uint64_t>() << ","
     << rec["failures"].get<long long>() << "\n";
  return os.str();
}

// ---------- driver ----------

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact Kostka polynomial engine for flag bundles over cyclic and path quivers"};
  app.require_subcommand(1);
  Common c;

  ComputeParams cp;
  auto* compute = app.add_subcommand("compute", "one Kostka polynomial, or a truncated expansion");
  compute->add_option("--bundle", cp.b.bundle, "fi | classical | full | diagram")->required();
  compute->add_option("--r", cp.b.r, "number of vertices for fi/full");
  compute->add_option("--N", cp.b.N, "rank at each vertex")->required();
  compute->add_option("--quiver", cp.b.quiver, "diagram quiver: aK, aK:fb..., cyclic:R");
  compute->add_option("--sub", cp.b.sub, "sub-quiver mask: all, none, or 0/1 string");
  auto* lam_opt = compute->add_option("--lambda", cp.lambda, "highest weight, blocks split by ;");
  compute->add_option("--mu", cp.mu, "base weight, blocks split by ;")->required();
  auto* win_opt = compute->add_option("--window", cp.window, "expand every lambda with phi-level <= this bound");
  win_opt->excludes(lam_opt);
  compute->add_flag("--check", cp.check, "cross-check against the truncated expansion engine");
  add_common(compute, c);

  SweepParams sp;
  auto* sweep = app.add_subcommand("sweep-positivity", "grid report of coefficient signs and shift dominance");
  sweep->add_option("--bundle", sp.b.bundle, "fi | classical | full | diagram")->required();
  sweep->add_option("--r", sp.b.r, "number of vertices for fi/full");
  sweep->add_option("--N", sp.b.N, "rank at each vertex")->required();
  sweep->add_option("--quiver", sp.b.quiver, "diagram quiver: aK, aK:fb..., cyclic:R");
  sweep->add_option("--sub", sp.b.sub, "sub-quiver mask: all, none, or 0/1 string");
  sweep->add_option("--max-entry", sp.max_entry, "grid of dominant weights with entries in [0, E]");
  sweep->add_option("--weight-sum", sp.weight_sum, "classical grids: partitions of this size");
  sweep->add_flag("--check", sp.check, "cross-check every cell against the truncated expansion engine");
  add_common(sweep, c);

  FlagsParams fp;
  auto* flags = app.add_subcommand("flags", "count invariant complete flags at a finite-field point");
  flags->add_option("--r", fp.r, "cycle length")->required();
  flags->add_option("--N", fp.N, "rank at each vertex")->required();
  flags->add_option("--point", fp.point, "regnilp | ssreg | random");
  flags->add_option("--field", fp.field, "field size: 2, 3, or 5");
  flags->add_option("--type", fp.type, "incidence condition: D0 | D1");
  add_common(flags, c);

  ResolveParams rp;
  auto* resolve = app.add_subcommand("resolve", "flag type and finiteness report for a quiver representation");
  resolve->add_option("--quiver", rp.quiver, "aK, aK:fb..., or cyclic:R; a rep file may supply it");
  auto* rep_opt = resolve->add_option("--rep", rp.rep, "summands, e.g. S1+S2, I1-3, 2*S1[2]");
  auto* repf_opt = resolve->add_option("--rep-file", rp.rep_file, "JSON description of the representation");
  repf_opt->excludes(rep_opt);
  resolve->add_option("--field", rp.field, "coefficient field: 0 for exact rationals, else a prime");
  add_common(resolve, c);

  VerifyParams vp;
  auto* verify = app.add_subcommand("verify", "randomized checks of the determinant and splitting identities");
  verify->add_option("what", vp.what, "mk-lemma | splitting")->required();
  verify->add_option("--trials", vp.trials, "number of random trials");
  verify->add_option("--prime", vp.prime, "field size; 0 for exact rationals");
  verify->add_option("--r", vp.r, "cycle length (splitting)");
  verify->add_option("--N", vp.N, "matrix size (splitting)");
  add_common(verify, c);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  if (compute->parsed()) {
    if (cp.window < 0 && cp.lambda.empty())
      throw ValidationError("compute needs --lambda or --window");
    emit_record(c, resolve_format(c, "json"), compute_key(cp, c),
                [&] { return compute_record(cp, c); }, compute_csv, out, err);
    return 0;
  }
  if (sweep->parsed()) {
    if (sp.b.bundle == "classical" && sp.weight_sum < 0)
      throw ValidationError("classical sweeps need --weight-sum");
    emit_record(c, resolve_format(c, "csv"), sweep_key(sp, c),
                [&] { return sweep_record(sp, c); }, sweep_csv, out, err);
    return 0;
  }
  if (flags->parsed()) {
    emit_record(c, resolve_format(c, "json"), flags_key(fp, c),
                [&] { return flags_record(fp, c); }, flags_csv, out, err);
    return 0;
  }
  if (resolve->parsed()) {
    if (rp.rep.empty() && rp.rep_file.empty())
      throw ValidationError("resolve needs --rep or --rep-file");
    std::optional<OJson> rep_json;
    if (!rp.rep_file.empty()) {
      rep_json = load_rep_file(rp.rep_file);
      if (rep_json->contains("quiver")) {
        std::string q = (*rep_json)["quiver"].get<std::string>();
        if (!rp.quiver.empty() && rp.quiver != q)
          throw ValidationError("--quiver disagrees with the quiver in the representation file");
        rp.quiver = q;
      }
    }
    if (rp.quiver.empty())
      throw ValidationError("resolve needs --quiver, or a representation file naming one");
    const OJson* rj = rep_json ? &*rep_json : nullptr;
    emit_record(c, resolve_format(c, "json"), resolve_key(rp, c, rj),
                [&] { return resolve_record(rp, c, rj); }, resolve_csv, out, err);
    return 0;
  }
  if (verify->parsed()) {
    emit_record(c, resolve_format(c, "json"), verify_key(vp, c),
                [&] { return verify_record(vp, c); }, verify_csv, out, err);
    return 0;
  }
  throw InternalError("no subcommand dispatched");
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               bool allow_jobs = true) {
  try {
    if (!args.empty() && (args[0] == "--jobs" || args[0].rfind("--jobs=", 0) == 0)) {
      if (!allow_jobs) throw ValidationError("--jobs lines cannot nest another --jobs batch");
      std::string path;
      if (args[0] == "--jobs") {
        if (args.size() != 2) throw ValidationError("--jobs takes exactly one file argument");
        path = args[1];
      } else {
        if (args.size() != 1) throw ValidationError("--jobs takes exactly one file argument");
        path = args[0].substr(7);
      }
      std::ifstream in(path);
      if (!in) throw ValidationError("cannot open jobs file " + path);
      int worst = 0;
      std::string line;
      std::size_t lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        OJson j = OJson::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("argv") || !j["argv"].is_array()) {
          err << "jobs: line " << lineno << " is not an object with an argv array\n";
          worst = std::max(worst, 2);
          continue;
        }
        std::vector<std::string> sub;
        for (const auto& a : j["argv"]) {
          if (!a.is_string()) {
            sub.clear();
            break;
          }
          sub.push_back(a.get<std::string>());
        }
        if (sub.empty()) {
          err << "jobs: line " << lineno << " has an empty or non-string argv\n";
          worst = std::max(worst, 2);
          continue;
        }
        worst = std::max(worst, run(sub, out, err, false));
      }
      return worst;
    }
    return dispatch(args, out, err);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const PointednessViolation& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    err << "internal invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace cli
}  // namespace kse
