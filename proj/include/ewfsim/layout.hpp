// Labeled tensor-product Hilbert space layout and index arithmetic.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ewfsim {

struct LayoutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Subsystem {
  std::string name;
  std::size_t dim = 0;
  std::vector<std::string> basis_labels;
};

// Ordered list of named subsystems. Global indices are row-major with the
// first subsystem most significant, matching Kronecker-product ordering.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<Subsystem> subsystems);

  // Convenience: n qubits named <prefix>0..<prefix>{n-1} with labels "0","1".
  static SubsystemLayout qubits(std::size_t n, const std::string& prefix = "q");

  std::size_t count() const { return subs_.size(); }
  std::size_t dim() const { return total_dim_; }
  const Subsystem& at(std::size_t i) const { return subs_.at(i); }
  const std::vector<Subsystem>& subsystems() const { return subs_; }

  bool has(std::string_view name) const;
  std::size_t position_of(std::string_view name) const;  // throws LayoutError
  std::size_t label_index(std::string_view subsystem, std::string_view label) const;

  std::vector<std::size_t> unpack(std::size_t global_index) const;
  std::size_t pack(std::span<const std::size_t> local_indices) const;

  // Layout of a subset of subsystems, in this layout's order.
  SubsystemLayout sublayout(std::span<const std::string> names) const;

  // Concatenation; throws LayoutError on name collision.
  SubsystemLayout concat(const SubsystemLayout& other) const;

  bool operator==(const SubsystemLayout& other) const;

 private:
  std::vector<Subsystem> subs_;
  std::size_t total_dim_ = 1;
};

}  // namespace ewfsim
