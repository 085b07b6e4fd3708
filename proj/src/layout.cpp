#include "ewfsim/layout.hpp"

#include <algorithm>
#include <unordered_set>

namespace ewfsim {

SubsystemLayout::SubsystemLayout(std::vector<Subsystem> subsystems)
    : subs_(std::move(subsystems)) {
  std::unordered_set<std::string> seen;
  for (const auto& s : subs_) {
    if (s.dim == 0) throw LayoutError("subsystem '" + s.name + "' has dimension 0");
    if (s.dim != s.basis_labels.size())
      throw LayoutError("subsystem '" + s.name + "' dim does not match label count");
    if (!seen.insert(s.name).second)
      throw LayoutError("duplicate subsystem name '" + s.name + "'");
    total_dim_ *= s.dim;
  }
}

SubsystemLayout SubsystemLayout::qubits(std::size_t n, const std::string& prefix) {
  std::vector<Subsystem> subs;
  subs.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    subs.push_back({prefix + std::to_string(i), 2, {"0", "1"}});
  return SubsystemLayout(std::move(subs));
}

bool SubsystemLayout::has(std::string_view name) const {
  return std::any_of(subs_.begin(), subs_.end(),
                     [&](const Subsystem& s) { return s.name == name; });
}

std::size_t SubsystemLayout::position_of(std::string_view name) const {
  for (std::size_t i = 0; i < subs_.size(); ++i)
    if (subs_[i].name == name) return i;
  throw LayoutError("no subsystem named '" + std::string(name) + "'");
}

std::size_t SubsystemLayout::label_index(std::string_view subsystem,
                                         std::string_view label) const {
  const Subsystem& s = subs_[position_of(subsystem)];
  for (std::size_t i = 0; i < s.basis_labels.size(); ++i)
    if (s.basis_labels[i] == label) return i;
  throw LayoutError("subsystem '" + std::string(subsystem) + "' has no basis label '" +
                    std::string(label) + "'");
}

std::vector<std::size_t> SubsystemLayout::unpack(std::size_t global_index) const {
  std::vector<std::size_t> out(subs_.size());
  for (std::size_t i = subs_.size(); i-- > 0;) {
    out[i] = global_index % subs_[i].dim;
    global_index /= subs_[i].dim;
  }
  return out;
}

std::size_t SubsystemLayout::pack(std::span<const std::size_t> local_indices) const {
  if (local_indices.size() != subs_.size())
    throw LayoutError("pack: wrong number of local indices");
  std::size_t g = 0;
  for (std::size_t i = 0; i < subs_.size(); ++i) {
    if (local_indices[i] >= subs_[i].dim) throw LayoutError("pack: local index out of range");
    g = g * subs_[i].dim + local_indices[i];
  }
  return g;
}

SubsystemLayout SubsystemLayout::sublayout(std::span<const std::string> names) const {
  std::vector<Subsystem> subs;
  for (const auto& s : subs_) {
    if (std::find(names.begin(), names.end(), s.name) != names.end()) subs.push_back(s);
  }
  if (subs.size() != names.size())
    throw LayoutError("sublayout: some requested names are absent");
  return SubsystemLayout(std::move(subs));
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  std::vector<Subsystem> subs = subs_;
  subs.insert(subs.end(), other.subs_.begin(), other.subs_.end());
  return SubsystemLayout(std::move(subs));  // ctor rejects collisions
}

bool SubsystemLayout::operator==(const SubsystemLayout& other) const {
  if (subs_.size() != other.subs_.size()) return false;
  for (std::size_t i = 0; i < subs_.size(); ++i) {
    if (subs_[i].name != other.subs_[i].name || subs_[i].dim != other.subs_[i].dim ||
        subs_[i].basis_labels != other.subs_[i].basis_labels)
      return false;
  }
  return true;
}

}  // namespace ewfsim
