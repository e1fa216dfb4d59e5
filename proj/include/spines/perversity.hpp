#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "spines/errors.hpp"

namespace spines {

/// Integer weight function p(k) on stratum codimensions, with p(0) = 0
/// always. Either one of the named formulas or an explicit table with a
/// default value for codimensions not listed.
class perversity {
public:
    static perversity zero() { return perversity(kind::zero); }
    static perversity minus_one() { return perversity(kind::minus_one); }
    static perversity lower_middle() { return perversity(kind::lower_middle); }
    static perversity top() { return perversity(kind::top); }

    static perversity custom(std::map<int, int> values, int default_value = 0) {
        perversity p(kind::custom);
        for (const auto& [k, v] : values) {
            if (k < 1)
                throw invalid_argument_error(
                    "custom perversity entries need codimension >= 1 (p(0) is fixed)");
            (void)v;
        }
        p.values_ = std::move(values);
        p.default_ = default_value;
        return p;
    }

    /// Accepts a formula name ("zero", "minus-one", "lower-middle", "top")
    /// or a table "k:v,k:v,...", optionally with a "default:v" clause.
    static perversity parse(const std::string& text) {
        std::string t = trimmed(text);
        if (t == "zero") return zero();
        if (t == "minus-one") return minus_one();
        if (t == "lower-middle") return lower_middle();
        if (t == "top") return top();
        if (t.empty()) throw invalid_argument_error("empty perversity");

        std::map<int, int> values;
        std::optional<int> default_value;
        std::stringstream ss(t);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::string entry = trimmed(item);
            auto colon = entry.find(':');
            if (colon == std::string::npos)
                throw invalid_argument_error("bad perversity entry '" + entry +
                                             "' (expected k:v)");
            std::string key = trimmed(entry.substr(0, colon));
            int value = parse_int(trimmed(entry.substr(colon + 1)), entry);
            if (key == "default") {
                if (default_value)
                    throw invalid_argument_error("duplicate default in perversity");
                default_value = value;
                continue;
            }
            int k = parse_int(key, entry);
            if (k < 1)
                throw invalid_argument_error(
                    "perversity table keys must be >= 1 (p(0) is fixed), got '" +
                    entry + "'");
            if (values.count(k))
                throw invalid_argument_error("duplicate perversity entry for k=" +
                                             std::to_string(k));
            values[k] = value;
        }
        return custom(std::move(values), default_value.value_or(0));
    }

    int operator()(int k) const {
        if (k < 0) throw invalid_argument_error("perversity argument must be >= 0");
        if (k == 0) return 0;
        switch (kind_) {
            case kind::zero: return 0;
            case kind::minus_one: return -1;
            case kind::lower_middle: return (k - 2) >= 0 ? (k - 2) / 2
                                                        : -((3 - k) / 2);
            case kind::top: return k - 2;
            case kind::custom: {
                auto it = values_.find(k);
                return it != values_.end() ? it->second : default_;
            }
        }
        return 0;
    }

    std::string name() const {
        switch (kind_) {
            case kind::zero: return "zero";
            case kind::minus_one: return "minus-one";
            case kind::lower_middle: return "lower-middle";
            case kind::top: return "top";
            case kind::custom: break;
        }
        std::string out;
        for (const auto& [k, v] : values_) {
            out += std::to_string(k) + ":" + std::to_string(v) + ",";
        }
        out += "default:" + std::to_string(default_);
        return out;
    }

    bool operator==(const perversity&) const = default;

private:
    enum class kind { zero, minus_one, lower_middle, top, custom };

    explicit perversity(kind k) : kind_(k) {}

    static std::string trimmed(const std::string& s) {
        auto first = s.find_first_not_of(" \t");
        if (first == std::string::npos) return "";
        auto last = s.find_last_not_of(" \t");
        return s.substr(first, last - first + 1);
    }

    static int parse_int(const std::string& s, const std::string& context) {
        try {
            std::size_t pos = 0;
            int v = std::stoi(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw invalid_argument_error("bad integer in perversity entry '" +
                                         context + "'");
        }
    }

    kind kind_;
    std::map<int, int> values_;
    int default_ = 0;
};

}  // namespace spines
