#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace aurakit::model {

enum class ValueType { int_type, real, text, boolean, choice };

std::string value_type_name(ValueType t);

// Runtime value for parameters, widget states and expression evaluation.
class Value {
public:
    Value() : v_(std::int64_t(0)) {}
    Value(std::int64_t i) : v_(i) {}
    Value(int i) : v_(std::int64_t(i)) {}
    Value(double d) : v_(d) {}
    Value(std::string s) : v_(std::move(s)) {}
    Value(const char* s) : v_(std::string(s)) {}
    Value(bool b) : v_(b) {}

    bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
    bool is_real() const { return std::holds_alternative<double>(v_); }
    bool is_number() const { return is_int() || is_real(); }
    bool is_text() const { return std::holds_alternative<std::string>(v_); }
    bool is_bool() const { return std::holds_alternative<bool>(v_); }

    std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
    double as_real() const { return is_int() ? double(as_int()) : std::get<double>(v_); }
    const std::string& as_text() const { return std::get<std::string>(v_); }
    bool as_bool() const { return std::get<bool>(v_); }

    // Canonical display form; also the text typed into widgets.
    std::string str() const;

    friend bool operator==(const Value& a, const Value& b) {
        if (a.is_number() && b.is_number() && !(a.is_int() && b.is_int()))
            return a.as_real() == b.as_real();
        return a.v_ == b.v_;
    }

private:
    std::variant<std::int64_t, double, std::string, bool> v_;
};

}  // namespace aurakit::model
