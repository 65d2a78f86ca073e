#include "aurakit/core/semver.hpp"

#include <cctype>
#include <vector>

#include "aurakit/core/text.hpp"

namespace aurakit {

namespace {

bool parse_int(std::string_view s, int& out) {
    if (s.empty() || (s.size() > 1 && s[0] == '0')) return false;  // no leading zeros
    long v = 0;
    for (char c : s) {
        if (!std::isdigit((unsigned char)c)) return false;
        v = v * 10 + (c - '0');
        if (v > 1'000'000'000L) return false;
    }
    out = int(v);
    return true;
}

bool valid_ident_chars(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum((unsigned char)c) && c != '-' && c != '.') return false;
    return true;
}

// semver precedence for prerelease strings
int compare_prerelease(const std::string& a, const std::string& b) {
    if (a == b) return 0;
    if (a.empty()) return 1;   // release > prerelease
    if (b.empty()) return -1;
    auto as = split(a, '.'), bs = split(b, '.');
    for (std::size_t i = 0; i < std::max(as.size(), bs.size()); ++i) {
        if (i >= as.size()) return -1;
        if (i >= bs.size()) return 1;
        int ai, bi;
        bool an = parse_int(as[i], ai), bn = parse_int(bs[i], bi);
        if (an && bn) {
            if (ai != bi) return ai < bi ? -1 : 1;
        } else if (an != bn) {
            return an ? -1 : 1;  // numeric identifiers sort lower
        } else if (as[i] != bs[i]) {
            return as[i] < bs[i] ? -1 : 1;
        }
    }
    return 0;
}

}  // namespace

std::optional<Semver> Semver::parse(std::string_view s) {
    Semver v;
    auto plus = s.find('+');
    if (plus != std::string_view::npos) {
        v.build = std::string(s.substr(plus + 1));
        if (!valid_ident_chars(v.build)) return std::nullopt;
        s = s.substr(0, plus);
    }
    auto dash = s.find('-');
    if (dash != std::string_view::npos) {
        v.prerelease = std::string(s.substr(dash + 1));
        if (!valid_ident_chars(v.prerelease)) return std::nullopt;
        s = s.substr(0, dash);
    }
    auto parts = split(s, '.');
    if (parts.size() != 3) return std::nullopt;
    if (!parse_int(parts[0], v.major) || !parse_int(parts[1], v.minor) ||
        !parse_int(parts[2], v.patch))
        return std::nullopt;
    return v;
}

std::string Semver::str() const {
    std::string s = std::to_string(major) + "." + std::to_string(minor) + "." +
                    std::to_string(patch);
    if (!prerelease.empty()) s += "-" + prerelease;
    if (!build.empty()) s += "+" + build;
    return s;
}

bool operator<(const Semver& a, const Semver& b) {
    if (a.major != b.major) return a.major < b.major;
    if (a.minor != b.minor) return a.minor < b.minor;
    if (a.patch != b.patch) return a.patch < b.patch;
    return compare_prerelease(a.prerelease, b.prerelease) < 0;
}

std::optional<VersionReq> VersionReq::parse(std::string_view s) {
    VersionReq req;
    req.text_ = trim(s);
    if (req.text_.empty()) return std::nullopt;

    for (const auto& tok_raw : split(req.text_, ' ')) {
        std::string tok = trim(tok_raw);
        if (tok.empty()) continue;
        Clause cl;
        std::string_view rest = tok;
        if (tok[0] == '^') {
            auto v = Semver::parse(tok.substr(1));
            if (!v) return std::nullopt;
            // ^x.y.z: >= x.y.z and below the next breaking version
            Clause lo{Clause::Op::ge, *v};
            Semver hi;
            if (v->major > 0)
                hi = Semver{v->major + 1, 0, 0, "0", ""};
            else if (v->minor > 0)
                hi = Semver{0, v->minor + 1, 0, "0", ""};
            else
                hi = Semver{0, 0, v->patch + 1, "0", ""};
            req.clauses_.push_back(lo);
            req.clauses_.push_back(Clause{Clause::Op::lt, hi});
            continue;
        }
        if (rest.rfind(">=", 0) == 0) {
            cl.op = Clause::Op::ge;
            rest = rest.substr(2);
        } else if (rest.rfind("<=", 0) == 0) {
            cl.op = Clause::Op::le;
            rest = rest.substr(2);
        } else if (rest[0] == '>') {
            cl.op = Clause::Op::gt;
            rest = rest.substr(1);
        } else if (rest[0] == '<') {
            cl.op = Clause::Op::lt;
            rest = rest.substr(1);
        } else if (rest[0] == '=') {
            cl.op = Clause::Op::eq;
            rest = rest.substr(1);
        } else {
            cl.op = Clause::Op::eq;  // bare version = exact
        }
        auto v = Semver::parse(rest);
        if (!v) return std::nullopt;
        cl.version = *v;
        req.clauses_.push_back(cl);
    }
    if (req.clauses_.empty()) return std::nullopt;
    return req;
}

bool VersionReq::matches(const Semver& v) const {
    for (const auto& cl : clauses_) {
        bool ok = false;
        switch (cl.op) {
            case Clause::Op::eq: ok = v == cl.version; break;
            case Clause::Op::lt: ok = v < cl.version; break;
            case Clause::Op::le: ok = v <= cl.version; break;
            case Clause::Op::gt: ok = v > cl.version; break;
            case Clause::Op::ge: ok = v >= cl.version; break;
        }
        if (!ok) return false;
    }
    return true;
}

}  // namespace aurakit
