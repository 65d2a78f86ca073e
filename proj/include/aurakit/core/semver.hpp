#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aurakit {

// Semantic version: major.minor.patch with optional -prerelease and +build.
// Build metadata is ignored for ordering; a prerelease sorts before its
// release per the semver spec.
struct Semver {
    int major = 0;
    int minor = 0;
    int patch = 0;
    std::string prerelease;
    std::string build;

    static std::optional<Semver> parse(std::string_view s);

    std::string str() const;

    friend bool operator==(const Semver& a, const Semver& b) {
        return a.major == b.major && a.minor == b.minor && a.patch == b.patch &&
               a.prerelease == b.prerelease;
    }
    friend bool operator<(const Semver& a, const Semver& b);
    friend bool operator<=(const Semver& a, const Semver& b) { return a < b || a == b; }
    friend bool operator>(const Semver& a, const Semver& b) { return b < a; }
    friend bool operator>=(const Semver& a, const Semver& b) { return b <= a; }
};

// Version requirement: exact ("1.2.3" or "=1.2.3"), caret ("^1.2.3"), or a
// space-separated list of comparator clauses (">=1.0.0 <2.0.0").
class VersionReq {
public:
    static std::optional<VersionReq> parse(std::string_view s);

    bool matches(const Semver& v) const;
    const std::string& str() const { return text_; }

private:
    struct Clause {
        enum class Op { eq, lt, le, gt, ge } op;
        Semver version;
    };
    std::vector<Clause> clauses_;
    std::string text_;
};

}  // namespace aurakit
