#include "vaforge/variables.hpp"

#include <mutex>
#include <unordered_map>

namespace vaforge {

namespace {
struct Interner {
    std::mutex mutex;
    std::vector<std::string> names{""};
    std::unordered_map<std::string, unsigned> ids{{"", 0u}};
};
Interner& interner() {
    static Interner instance;
    return instance;
}
}  // namespace

VarId::VarId(const std::string& name) {
    auto& in = interner();
    std::lock_guard<std::mutex> lock(in.mutex);
    auto it = in.ids.find(name);
    if (it != in.ids.end()) {
        m_id = it->second;
        return;
    }
    m_id = static_cast<unsigned>(in.names.size());
    in.names.push_back(name);
    in.ids.emplace(name, m_id);
}

const std::string& VarId::name() const {
    auto& in = interner();
    std::lock_guard<std::mutex> lock(in.mutex);
    return in.names[m_id];
}

}  // namespace vaforge
