#include "amalgam/predual.hpp"

#include <algorithm>
#include <cmath>

#include "amalgam/errors.hpp"
#include "amalgam/operators.hpp"
#include "json.hpp"
#include "reduce.hpp"

namespace amalgam {

BlockDecomposition make_block_decomposition(std::vector<Block> blocks, const ExponentSystem& sys) {
  if (blocks.empty()) throw EmptyDecomposition();
  BlockDecomposition dec;
  detail::Compensated total;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const Block& b = blocks[j];
    if (!is_dyadic(b.r)) throw DomainError("block scale must be a power of two");
    if (!std::isfinite(std::abs(b.c))) throw DomainError("block coefficient must be finite");
    if (b.f.grid().dim() != sys.n) throw DomainError("block dimension differs from the system");
    const double norm = discrete_amalgam_norm(b.f, sys.p_conj, sys.s_conj, 1.0);
    if (norm > 1.0 + kBlockNormSlack) throw BlockNormExceeded(j, norm);
    dec.norms_.push_back(norm);
    total.add(std::abs(b.c));
  }
  dec.blocks_ = std::move(blocks);
  dec.sys_ = sys;
  dec.coefficient_sum_ = total.value();
  return dec;
}

namespace {

bool near_integer(double x, long long& k) {
  const double r = std::round(x);
  k = static_cast<long long>(r);
  return std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x));
}

// Target cell -> source cell map for a source grid whose cells are unions of
// target cells. Entries are -1 outside the source box.
std::vector<long long> coarsening_map(const Grid& src, const Grid& dst) {
  if (src.dim() != dst.dim()) throw DomainError("incompatible scale: dimension mismatch");
  const int n = dst.dim();
  std::array<long long, kMaxDim> ratio{1, 1, 1};
  std::array<long long, kMaxDim> offset{0, 0, 0};
  for (int a = 0; a < n; ++a) {
    long long m = 0;
    long long o = 0;
    if (!near_integer(src.spacing(a) / dst.spacing(a), m) || m < 1 ||
        !near_integer((src.lower(a) - dst.lower(a)) / dst.spacing(a), o)) {
      throw DomainError("incompatible scale: block grid is not an aligned coarsening");
    }
    if (o < 0 || o + m * static_cast<long long>(src.count(a)) >
                     static_cast<long long>(dst.count(a))) {
      throw DomainError("incompatible scale: block grid leaves the target box");
    }
    ratio[a] = m;
    offset[a] = o;
  }
  std::vector<long long> map(dst.size(), -1);
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const Index t = dst.unflat(i);
    Index s{0, 0, 0};
    bool inside = true;
    for (int a = 0; a < n && inside; ++a) {
      const long long rel = static_cast<long long>(t[a]) - offset[a];
      if (rel < 0 || rel >= ratio[a] * static_cast<long long>(src.count(a))) {
        inside = false;
      } else {
        s[a] = static_cast<std::size_t>(rel / ratio[a]);
      }
    }
    if (inside) map[i] = static_cast<long long>(src.flat(s));
  }
  return map;
}

}  // namespace

GridFunction synthesize(const BlockDecomposition& dec, const Grid& grid) {
  const Exponent alpha_prime = dec.system().alpha_conj;
  std::vector<double> re(grid.size(), 0.0);
  std::vector<double> im;
  bool first = true;
  for (const Block& b : dec.blocks()) {
    GridFunction moved = st_dilation(b.f, b.r, alpha_prime);
    const GridFunction term = b.c.imag() == 0.0 ? b.c.real() * moved : b.c * moved;
    const std::vector<long long> map =
        term.grid() == grid ? std::vector<long long>{} : coarsening_map(term.grid(), grid);
    if (term.is_complex() && im.empty()) im.assign(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const long long s = map.empty() ? static_cast<long long>(i) : map[i];
      const double tr = s < 0 ? 0.0 : term.real(static_cast<std::size_t>(s));
      const double ti = s < 0 ? 0.0 : term.imag(static_cast<std::size_t>(s));
      // The first block is assigned, so a single block reproduces its samples bitwise.
      if (first) {
        re[i] = tr;
        if (!im.empty()) im[i] = ti;
      } else {
        re[i] += tr;
        if (!im.empty()) im[i] += ti;
      }
    }
    first = false;
  }
  if (im.empty()) return GridFunction(grid, std::move(re));
  return GridFunction(grid, std::move(re), std::move(im));
}

double h_norm_upper_bound(const BlockDecomposition& dec) { return dec.coefficient_sum(); }

std::complex<double> pairing(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  detail::Compensated re;
  detail::Compensated im;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::complex<double> v = f.at(i) * g.at(i);
    re.add(v.real());
    im.add(v.imag());
  }
  const double vol = f.grid().cell_volume();
  return {re.value() * vol, im.value() * vol};
}

DualityReport duality_check(const GridFunction& g, const BlockDecomposition& dec,
                            const ExponentSystem& sys, const RadiusSweep& sweep) {
  if (!sys.validated) throw IndexGateViolation("duality needs an admissible exponent system");
  for (const Block& b : dec.blocks()) {
    if (std::find(sweep.radii.begin(), sweep.radii.end(), b.r) == sweep.radii.end()) {
      throw DomainError("block scale missing from the radius sweep");
    }
  }
  DualityReport rep;
  const GridFunction f = synthesize(dec, g.grid());
  rep.lhs = std::abs(pairing(f, g));
  rep.g_norm = discrete_alpha_norm(g, sys, sweep).value;
  rep.h_bound = h_norm_upper_bound(dec);
  rep.rhs = rep.g_norm * rep.h_bound;
  rep.pass = rep.lhs <= rep.rhs * (1.0 + kDualitySlack);
  return rep;
}

std::vector<CharacteristicBound> characteristic_norm_bounds(const std::vector<double>& r0_list,
                                                            const ExponentSystem& sys,
                                                            const RadiusSweep& sweep,
                                                            const Grid& grid) {
  if (!sys.validated) throw IndexGateViolation("characteristic bounds need an admissible system");
  const int n = grid.dim();
  const std::vector<double> origin(static_cast<std::size_t>(n), 0.0);
  std::vector<CharacteristicBound> out;
  for (double r0 : r0_list) {
    if (!is_dyadic(r0)) throw DomainError("r0 must be a power of two");
    CharacteristicBound cb;
    cb.r0 = r0;
    const GridFunction chi = sample(indicator_ball(origin, r0), grid);
    cb.alpha_norm = alpha_amalgam_norm(chi, sys, sweep).value;
    cb.alpha_ratio = cb.alpha_norm / std::pow(r0, n * sys.alpha.inverse());

    // chi_B(0,r0) = c St_r0(chi_B(0,1) / N) with c = r0^{n/alpha'} N.
    const Grid unit = grid.scaled(1.0 / r0);
    const GridFunction unit_chi = sample(indicator_ball(origin, 1.0), unit);
    const double norm = discrete_amalgam_norm(unit_chi, sys.p_conj, sys.s_conj, 1.0);
    const double scale = std::pow(r0, n * sys.alpha_conj.inverse());
    std::vector<Block> blocks;
    blocks.push_back(Block{scale * norm, r0, (1.0 / norm) * unit_chi});
    const BlockDecomposition dec = make_block_decomposition(std::move(blocks), sys);
    cb.h_bound = h_norm_upper_bound(dec);
    cb.h_ratio = cb.h_bound / scale;
    const GridFunction synth = synthesize(dec, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      cb.synthesis_error = std::max(cb.synthesis_error, std::abs(synth.at(i) - chi.at(i)));
    }
    out.push_back(cb);
  }
  return out;
}

namespace {

std::vector<double> json_numbers(const nlohmann::json& v) {
  if (v.is_number()) return {v.get<double>()};
  if (v.is_array()) {
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw DomainError("field parameters must be numeric");
      out.push_back(x.get<double>());
    }
    return out;
  }
  throw DomainError("field parameters must be numbers or numeric lists");
}

FieldSpec json_field(const nlohmann::json& j) {
  FieldSpec spec;
  if (j.is_string()) {
    spec.name = j.get<std::string>();
    return spec;
  }
  if (!j.is_object() || !j.contains("name")) throw DomainError("field needs a name");
  spec.name = j.at("name").get<std::string>();
  const nlohmann::json& params = j.contains("params") ? j.at("params") : j;
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (it.key() == "name" || it.key() == "params") continue;
    spec.params[it.key()] = json_numbers(it.value());
  }
  return spec;
}

}  // namespace

BlockDecomposition decomposition_from_json(const std::string& text, const ExponentSystem& sys,
                                           const Grid& grid) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed decomposition JSON: ") + e.what());
  }
  try {
    if (doc.contains("alpha_prime")) {
      const nlohmann::json& a = doc.at("alpha_prime");
      const double ap = a.is_string() && a.get<std::string>() == "inf" ? kInf : a.get<double>();
      const double inv = std::isinf(ap) ? 0.0 : 1.0 / ap;
      if (std::abs(inv - sys.alpha_conj.inverse()) > 1e-12) {
        throw DomainError("alpha_prime does not match the exponent system");
      }
    }
    std::vector<Block> blocks;
    for (const auto& jb : doc.at("blocks")) {
      Block b{{0.0, 0.0}, 1.0, GridFunction::zeros(grid)};
      const nlohmann::json& c = jb.at("c");
      if (c.is_array()) {
        if (c.size() != 2) throw DomainError("complex coefficient needs [re, im]");
        b.c = {c.at(0).get<double>(), c.at(1).get<double>()};
      } else {
        b.c = {c.get<double>(), 0.0};
      }
      b.r = jb.value("r", 1.0);
      if (!is_dyadic(b.r)) throw DomainError("block scale must be a power of two");
      b.f = sample(json_field(jb.at("field")), grid.scaled(1.0 / b.r));
      blocks.push_back(std::move(b));
    }
    return make_block_decomposition(std::move(blocks), sys);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed decomposition JSON: ") + e.what());
  }
}

}  // namespace amalgam
