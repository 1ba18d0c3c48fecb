#pragma once

#include <string>
#include <vector>

namespace vaforge {

/// Interned formal-variable symbol. Distinct names denote distinct variables;
/// comparisons are by name so container ordering is independent of interning
/// order.
class VarId {
  public:
    VarId() : m_id(0) {}
    explicit VarId(const std::string& name);

    const std::string& name() const;
    unsigned id() const { return m_id; }

    friend bool operator==(VarId a, VarId b) { return a.m_id == b.m_id; }
    friend bool operator!=(VarId a, VarId b) { return a.m_id != b.m_id; }
    friend bool operator<(VarId a, VarId b) { return a.name() < b.name(); }

  private:
    unsigned m_id;
};

using VarList = std::vector<VarId>;

}  // namespace vaforge
