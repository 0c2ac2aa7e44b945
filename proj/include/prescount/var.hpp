#ifndef PRESCOUNT_VAR_HPP
#define PRESCOUNT_VAR_HPP

#include <cstdint>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "prescount/errors.hpp"

namespace prescount {

// Variables are interned indices; the canonical order on term entries is by
// index (i.e. by first-interning order within a process).
using VarId = std::int32_t;

class VarTable {
public:
    static VarId intern(const std::string& name) {
        if (name.empty()) throw ValidationError("empty variable name");
        Impl& t = impl();
        std::lock_guard<std::mutex> lock(t.mu);
        auto it = t.ids.find(name);
        if (it != t.ids.end()) return it->second;
        VarId id = static_cast<VarId>(t.names.size());
        t.names.push_back(name);
        t.ids.emplace(name, id);
        return id;
    }

    static std::string name(VarId id) {
        Impl& t = impl();
        std::lock_guard<std::mutex> lock(t.mu);
        if (id < 0 || static_cast<std::size_t>(id) >= t.names.size())
            throw InternalError("unknown variable id " + std::to_string(id));
        return t.names[static_cast<std::size_t>(id)];
    }

private:
    struct Impl {
        std::mutex mu;
        std::vector<std::string> names;
        std::unordered_map<std::string, VarId> ids;
    };
    static Impl& impl() {
        static Impl t;
        return t;
    }
};

// Deterministic fresh-variable source: names "_0", "_1", ... from a monotone
// counter, skipping ids that occur in the seed set. Seeding from the input
// formula makes each elimination's output reproducible.
class FreshPool {
public:
    explicit FreshPool(std::set<VarId> used = {}) : used_(std::move(used)) {}

    VarId fresh() {
        for (;;) {
            VarId id = VarTable::intern("_" + std::to_string(next_++));
            if (used_.insert(id).second) return id;
        }
    }

    std::vector<VarId> fresh_tuple(std::size_t n) {
        std::vector<VarId> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back(fresh());
        return out;
    }

    void reserve(VarId id) { used_.insert(id); }

private:
    std::set<VarId> used_;
    std::uint64_t next_ = 0;
};

} // namespace prescount

#endif
