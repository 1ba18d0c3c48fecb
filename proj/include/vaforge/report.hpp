#pragma once

#include "vaforge/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vaforge {

struct Counterexample {
    std::string location;  // offending exponent vector / basis state
    std::string lhs, rhs;  // exact coefficient values on both sides
};

struct IdentityRecord {
    std::string name;
    std::string anchor;  // stable identity id used across reports
    std::string window;  // the certified comparison window
    bool passed = false;
    std::optional<Counterexample> counterexample;
    std::optional<std::string> error;  // evaluation error attached to the record
};

struct SuiteReport {
    std::string name;
    std::vector<IdentityRecord> identities;
    long duration_ms = 0;

    bool passed() const {
        for (auto& r : identities)
            if (!r.passed) return false;
        return !identities.empty();
    }
};

struct Report {
    std::string config_digest;
    std::vector<SuiteReport> suites;

    bool passed() const {
        for (auto& s : suites)
            if (!s.passed()) return false;
        return !suites.empty();
    }
    std::string to_text() const;
    std::string to_json(bool stable_durations = false) const;
};

using Box = std::vector<std::pair<VarId, std::pair<int, int>>>;

std::string box_str(const Box& box);

/// Exact coefficientwise comparison of two series over the box. The box must
/// lie inside both certified windows; a violation is reported as an error
/// record rather than a silent pass.
IdentityRecord check_series_equal(const std::string& name, const std::string& anchor,
                                  const Series& lhs, const Series& rhs, const Box& box);

/// Compares a series against zero on the box.
IdentityRecord check_series_zero(const std::string& name, const std::string& anchor,
                                 const Series& s, const Box& box);

IdentityRecord record_scalar_check(const std::string& name, const std::string& anchor,
                                   const Cyc& lhs, const Cyc& rhs, const std::string& location);

IdentityRecord record_error(const std::string& name, const std::string& anchor,
                            const std::string& message);

}  // namespace vaforge
