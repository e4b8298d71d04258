#include "evfuse/belief.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evfuse/error.hpp"
#include "text.hpp"

namespace evfuse {

Bba Bba::from_masses(const Frame& frame, std::vector<FocalElement> masses) {
  std::stable_sort(masses.begin(), masses.end(),
                   [](const FocalElement& a, const FocalElement& b) { return a.set < b.set; });
  std::vector<FocalElement> focal;
  focal.reserve(masses.size());
  for (const auto& fe : masses) {
    if (!std::isfinite(fe.mass)) throw ValidationError("non-finite mass on " + format_mask(frame, fe.set));
    if (fe.set == 0) continue;
    if (!focal.empty() && focal.back().set == fe.set)
      focal.back().mass += fe.mass;
    else
      focal.push_back(fe);
  }
  std::erase_if(focal, [](const FocalElement& fe) { return !(fe.mass >= kMassFloor); });
  if (focal.empty()) throw ValidationError("belief assignment has no positive mass");

  double total = 0.0;
  for (const auto& fe : focal) total += fe.mass;
  // Skipping the division when already normalized keeps this idempotent, so
  // serialized assignments read back bit-identical.
  const double slack = 4.0 * static_cast<double>(focal.size()) * std::numeric_limits<double>::epsilon();
  if (std::abs(total - 1.0) > slack)
    for (auto& fe : focal) fe.mass /= total;
  return Bba(frame, std::move(focal));
}

double Bba::mass(Mask set) const noexcept {
  auto it = std::lower_bound(focal_.begin(), focal_.end(), set,
                             [](const FocalElement& fe, Mask s) { return fe.set < s; });
  return it != focal_.end() && it->set == set ? it->mass : 0.0;
}

double Bba::mass(const Proposition& p) const {
  require_same_frame(frame_, p.frame(), "mass lookup");
  return mass(p.bits());
}

Bba make_bba(const Frame& frame, std::span<const MassAssignment> assignments) {
  std::vector<FocalElement> masses;
  masses.reserve(assignments.size());
  double total = 0.0;
  for (const auto& [prop, m] : assignments) {
    require_same_frame(frame, prop.frame(), "make_bba");
    if (prop.is_empty()) throw ValidationError("the empty set cannot carry mass");
    if (!std::isfinite(m)) throw ValidationError("non-finite mass on " + to_string(prop));
    if (m < 0.0) throw ValidationError("negative mass " + detail::format_g(m, 17) + " on " + to_string(prop));
    masses.push_back({prop.bits(), m});
    total += m;
  }
  if (std::abs(total - 1.0) > kInputSumTolerance)
    throw ValidationError("masses sum to " + detail::format_g(total, 12) + ", expected 1");
  return Bba::from_masses(frame, std::move(masses));
}

Bba make_bba(const Frame& frame, std::initializer_list<MassAssignment> assignments) {
  return make_bba(frame, std::span<const MassAssignment>(assignments.begin(), assignments.size()));
}

Bba vacuous(const Frame& frame) { return Bba::from_masses(frame, {{frame.full(), 1.0}}); }

double belief(const Bba& bba, const Proposition& x) {
  require_same_frame(bba.frame(), x.frame(), "belief");
  double sum = 0.0;
  for (const auto& fe : bba.focal_elements())
    if ((fe.set & ~x.bits()) == 0) sum += fe.mass;
  return sum;
}

double plausibility(const Bba& bba, const Proposition& x) {
  require_same_frame(bba.frame(), x.frame(), "plausibility");
  double sum = 0.0;
  for (const auto& fe : bba.focal_elements())
    if ((fe.set & x.bits()) != 0) sum += fe.mass;
  return sum;
}

Eigen::VectorXd pignistic(const Bba& bba) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(bba.frame().size()));
  for (const auto& fe : bba.focal_elements()) {
    const double share = fe.mass / static_cast<double>(cardinality(fe.set));
    for (Mask m = fe.set; m != 0; m &= m - 1) p(std::countr_zero(m)) += share;
  }
  return p;
}

Eigen::VectorXd singleton_beliefs(const Bba& bba) {
  Eigen::VectorXd bel = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(bba.frame().size()));
  for (const auto& fe : bba.focal_elements())
    if (cardinality(fe.set) == 1) bel(std::countr_zero(fe.set)) += fe.mass;
  return bel;
}

Bba discount(const Bba& bba, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ValidationError("discount reliability " + detail::format_g(alpha, 17) + " outside [0, 1]");
  const Mask theta = bba.frame().full();
  std::vector<FocalElement> out;
  out.reserve(bba.size() + 1);
  double ignorance = 1.0 - alpha;
  for (const auto& fe : bba.focal_elements()) {
    if (fe.set == theta)
      ignorance += alpha * fe.mass;
    else
      out.push_back({fe.set, alpha * fe.mass});
  }
  out.push_back({theta, ignorance});
  return Bba::from_masses(bba.frame(), std::move(out));
}

std::string to_text(const Bba& bba) {
  std::string out;
  for (const auto& fe : bba.focal_elements()) {
    out += format_mask(bba.frame(), fe.set);
    out += '\t';
    out += detail::format_g(fe.mass, 17);
    out += '\n';
  }
  return out;
}

Bba parse_bba(const Frame& frame, std::string_view text) {
  std::vector<MassAssignment> assignments;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto cut = line.find_last_of(" \t");
    if (cut == std::string_view::npos)
      throw ValidationError("line " + std::to_string(line_no) + ": expected 'proposition<TAB>mass'");
    auto mass = detail::to_double(line.substr(cut + 1));
    if (!mass) throw ValidationError("line " + std::to_string(line_no) + ": malformed mass");
    assignments.emplace_back(parse_proposition(frame, line.substr(0, cut)), *mass);
  }
  return make_bba(frame, assignments);
}

}  // namespace evfuse
