#include "vaforge/report.hpp"

#include <json.hpp>

#include <sstream>

namespace vaforge {

std::string box_str(const Box& box) {
    std::ostringstream os;
    for (size_t i = 0; i < box.size(); ++i) {
        if (i) os << " ";
        os << box[i].first.name() << ":[" << box[i].second.first << ".." << box[i].second.second
           << "]";
    }
    return os.str();
}

namespace {
std::string exp_str(const ExpVec& e, const VarList& vars) {
    std::ostringstream os;
    for (size_t i = 0; i < vars.size(); ++i) {
        if (i) os << " ";
        os << vars[i].name() << "^" << e[i];
    }
    return os.str();
}
}  // namespace

IdentityRecord check_series_equal(const std::string& name, const std::string& anchor,
                                  const Series& lhs, const Series& rhs, const Box& box) {
    IdentityRecord rec;
    rec.name = name;
    rec.anchor = anchor;
    rec.window = box_str(box);
    if (!lhs.covers(box))
        return record_error(name, anchor,
                            "lhs window (" + lhs.window().str(lhs.vars()) +
                                ") does not cover comparison box " + box_str(box));
    if (!rhs.covers(box))
        return record_error(name, anchor,
                            "rhs window (" + rhs.window().str(rhs.vars()) +
                                ") does not cover comparison box " + box_str(box));
    Series diff = lhs - rhs;
    // restrict attention to the box
    for (auto& [v, range] : box) diff = diff.truncated(v, range.first, range.second);
    auto bad = diff.first_term();
    if (!bad) {
        rec.passed = true;
        return rec;
    }
    rec.passed = false;
    Counterexample ce;
    ce.location = exp_str(bad->first, diff.vars());
    ExpVec le(lhs.vars().size(), 0), re(rhs.vars().size(), 0);
    for (size_t i = 0; i < diff.vars().size(); ++i) {
        int li = lhs.var_index(diff.vars()[i]);
        int ri = rhs.var_index(diff.vars()[i]);
        if (li >= 0) le[li] = bad->first[i];
        if (ri >= 0) re[ri] = bad->first[i];
    }
    ce.lhs = lhs.coeff(le).str();
    ce.rhs = rhs.coeff(re).str();
    rec.counterexample = ce;
    return rec;
}

IdentityRecord check_series_zero(const std::string& name, const std::string& anchor,
                                 const Series& s, const Box& box) {
    Series z = Series::constant(Cyc(0)).with_vars(s.vars());
    return check_series_equal(name, anchor, s, z, box);
}

IdentityRecord record_scalar_check(const std::string& name, const std::string& anchor,
                                   const Cyc& lhs, const Cyc& rhs, const std::string& location) {
    IdentityRecord rec;
    rec.name = name;
    rec.anchor = anchor;
    rec.window = "scalar";
    rec.passed = (lhs == rhs);
    if (!rec.passed) rec.counterexample = Counterexample{location, lhs.str(), rhs.str()};
    return rec;
}

IdentityRecord record_error(const std::string& name, const std::string& anchor,
                            const std::string& message) {
    IdentityRecord rec;
    rec.name = name;
    rec.anchor = anchor;
    rec.passed = false;
    rec.error = message;
    return rec;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << "config digest: " << config_digest << "\n";
    for (const auto& s : suites) {
        os << "suite " << s.name << ": " << (s.passed() ? "PASS" : "FAIL") << " ("
           << s.identities.size() << " identities, " << s.duration_ms << " ms)\n";
        for (const auto& r : s.identities) {
            os << "  [" << (r.passed ? "pass" : "FAIL") << "] " << r.name;
            if (!r.window.empty()) os << "  window: " << r.window;
            os << "\n";
            if (r.counterexample) {
                os << "         at " << r.counterexample->location << "\n";
                os << "         lhs = " << r.counterexample->lhs << "\n";
                os << "         rhs = " << r.counterexample->rhs << "\n";
            }
            if (r.error) os << "         error: " << *r.error << "\n";
        }
    }
    os << (passed() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return os.str();
}

std::string Report::to_json(bool stable_durations) const {
    nlohmann::ordered_json j;
    j["config_digest"] = config_digest;
    j["suites"] = nlohmann::ordered_json::array();
    for (const auto& s : suites) {
        nlohmann::ordered_json js;
        js["name"] = s.name;
        js["identities"] = nlohmann::ordered_json::array();
        for (const auto& r : s.identities) {
            nlohmann::ordered_json jr;
            jr["name"] = r.name;
            jr["anchor"] = r.anchor;
            jr["window"] = r.window;
            jr["status"] = r.passed ? "pass" : "fail";
            if (r.counterexample) {
                jr["counterexample"] = {{"location", r.counterexample->location},
                                        {"lhs", r.counterexample->lhs},
                                        {"rhs", r.counterexample->rhs}};
            }
            if (r.error) jr["error"] = *r.error;
            js["identities"].push_back(jr);
        }
        js["duration_ms"] = stable_durations ? 0 : s.duration_ms;
        j["suites"].push_back(js);
    }
    return j.dump(2);
}

}  // namespace vaforge
