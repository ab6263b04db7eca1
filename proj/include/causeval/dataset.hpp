#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "graph.hpp"
#include "stats.hpp"

namespace causeval {

enum class Role { treatment, outcome, covariate, id };
enum class ColType { discrete, continuous };

inline const char* role_name(Role r) {
    switch (r) {
        case Role::treatment: return "treatment";
        case Role::outcome: return "outcome";
        case Role::covariate: return "covariate";
        case Role::id: return "id";
    }
    throw std::logic_error("unreachable");
}

inline Role role_from_name(const std::string& s) {
    if (s == "treatment") return Role::treatment;
    if (s == "outcome") return Role::outcome;
    if (s == "covariate") return Role::covariate;
    if (s == "id") return Role::id;
    throw std::runtime_error("unknown role label '" + s + "'");
}

// Column-typed table of observations. Discrete columns hold state indices in
// [0, arity); continuous columns hold reals. The text form has a two-line
// header (names, then per-column `discrete:<arity>:<role>` or
// `continuous:<role>`) followed by comma-separated rows.
class Dataset {
public:
    struct Column {
        std::string name;
        ColType type = ColType::discrete;
        int arity = 0;  // 0 for continuous
        Role role = Role::covariate;
        std::vector<int> ivals;
        std::vector<double> dvals;

        std::size_t size() const {
            return type == ColType::discrete ? ivals.size() : dvals.size();
        }
    };

    int add_discrete_column(const std::string& name, int arity, Role role) {
        if (arity < 2) throw std::invalid_argument("column '" + name + "': arity must be >= 2");
        return add_column(name, ColType::discrete, arity, role);
    }

    int add_continuous_column(const std::string& name, Role role) {
        return add_column(name, ColType::continuous, 0, role);
    }

    int column_count() const { return static_cast<int>(cols_.size()); }
    std::size_t row_count() const { return n_rows_; }

    const Column& column(int i) const { return cols_.at(static_cast<std::size_t>(i)); }
    const Column& column(const std::string& name) const { return cols_.at(static_cast<std::size_t>(index_of(name))); }

    bool has_column(const std::string& name) const { return index_.count(name) != 0; }

    int index_of(const std::string& name) const {
        const auto it = index_.find(name);
        if (it == index_.end()) throw std::invalid_argument("unknown column '" + name + "'");
        return it->second;
    }

    int int_at(int col, std::size_t row) const {
        const Column& c = cols_.at(static_cast<std::size_t>(col));
        if (c.type != ColType::discrete)
            throw std::invalid_argument("column '" + c.name + "' is not discrete");
        return c.ivals.at(row);
    }

    double real_at(int col, std::size_t row) const {
        const Column& c = cols_.at(static_cast<std::size_t>(col));
        return c.type == ColType::continuous ? c.dvals.at(row)
                                             : static_cast<double>(c.ivals.at(row));
    }

    // Appends one row; values follow column order, discrete entries must be
    // integral and in range.
    void append_row(const std::vector<double>& values) {
        if (values.size() != cols_.size())
            throw std::invalid_argument("row width " + std::to_string(values.size()) +
                                        " does not match " + std::to_string(cols_.size()) +
                                        " columns");
        for (std::size_t i = 0; i < cols_.size(); ++i) {
            Column& c = cols_[i];
            if (c.type == ColType::discrete) {
                const int v = static_cast<int>(values[i]);
                if (static_cast<double>(v) != values[i] || v < 0 || v >= c.arity)
                    throw std::invalid_argument("column '" + c.name + "': value " +
                                                format_double(values[i]) + " outside arity " +
                                                std::to_string(c.arity));
                c.ivals.push_back(v);
            } else {
                c.dvals.push_back(values[i]);
            }
        }
        ++n_rows_;
    }

    std::vector<int> columns_with_role(Role r) const {
        std::vector<int> out;
        for (int i = 0; i < column_count(); ++i)
            if (cols_[static_cast<std::size_t>(i)].role == r) out.push_back(i);
        return out;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < cols_.size(); ++i) {
            if (i) out += ',';
            out += cols_[i].name;
        }
        out += '\n';
        for (std::size_t i = 0; i < cols_.size(); ++i) {
            if (i) out += ',';
            const Column& c = cols_[i];
            if (c.type == ColType::discrete)
                out += "discrete:" + std::to_string(c.arity) + ":" + role_name(c.role);
            else
                out += std::string("continuous:") + role_name(c.role);
        }
        out += '\n';
        for (std::size_t r = 0; r < n_rows_; ++r) {
            for (std::size_t i = 0; i < cols_.size(); ++i) {
                if (i) out += ',';
                const Column& c = cols_[i];
                out += c.type == ColType::discrete ? std::to_string(c.ivals[r])
                                                   : format_double(c.dvals[r]);
            }
            out += '\n';
        }
        return out;
    }

    static Dataset parse(const std::string& text) {
        std::istringstream in(text);
        std::string names_line, types_line;
        if (!std::getline(in, names_line) || !std::getline(in, types_line))
            throw std::runtime_error("dataset text: missing two-line header");
        const std::vector<std::string> names = detail::split(detail::trim_cr(names_line), ',');
        const std::vector<std::string> types = detail::split(detail::trim_cr(types_line), ',');
        if (names.size() != types.size())
            throw std::runtime_error("dataset text: header width mismatch (" +
                                     std::to_string(names.size()) + " names, " +
                                     std::to_string(types.size()) + " types)");
        Dataset d;
        for (std::size_t i = 0; i < names.size(); ++i) {
            const std::string name = detail::trim(names[i]);
            const std::vector<std::string> parts = detail::split(detail::trim(types[i]), ':');
            if (parts.size() == 3 && parts[0] == "discrete") {
                int arity = 0;
                try {
                    arity = std::stoi(parts[1]);
                } catch (const std::exception&) {
                    throw std::runtime_error("column '" + name + "': bad arity '" + parts[1] + "'");
                }
                d.add_discrete_column(name, arity, role_from_name(parts[2]));
            } else if (parts.size() == 2 && parts[0] == "continuous") {
                d.add_continuous_column(name, role_from_name(parts[1]));
            } else {
                throw std::runtime_error("column '" + name + "': bad type annotation '" +
                                         detail::trim(types[i]) + "'");
            }
        }
        std::vector<std::string> problems;
        std::size_t problem_total = 0;
        const auto note = [&](const std::string& msg) {
            ++problem_total;
            if (problems.size() < 10) problems.push_back(msg);
        };
        std::string line;
        std::size_t lineno = 2;
        while (std::getline(in, line)) {
            ++lineno;
            line = detail::trim_cr(line);
            if (line.empty()) continue;
            const std::vector<std::string> cells = detail::split(line, ',');
            if (cells.size() != d.cols_.size()) {
                note("line " + std::to_string(lineno) + ": expected " +
                     std::to_string(d.cols_.size()) + " values, got " +
                     std::to_string(cells.size()));
                continue;
            }
            std::vector<double> row(cells.size());
            bool row_ok = true;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                const Column& c = d.cols_[i];
                const std::string cell = detail::trim(cells[i]);
                char* end = nullptr;
                if (c.type == ColType::discrete) {
                    const long v = std::strtol(cell.c_str(), &end, 10);
                    if (end == cell.c_str() || *end != '\0') {
                        note("line " + std::to_string(lineno) + ", column '" + c.name + "': '" +
                             cell + "' is not an integer");
                        row_ok = false;
                    } else if (v < 0 || v >= c.arity) {
                        note("line " + std::to_string(lineno) + ", column '" + c.name +
                             "': value " + cell + " outside arity " + std::to_string(c.arity));
                        row_ok = false;
                    } else {
                        row[i] = static_cast<double>(v);
                    }
                } else {
                    const double v = std::strtod(cell.c_str(), &end);
                    if (end == cell.c_str() || *end != '\0') {
                        note("line " + std::to_string(lineno) + ", column '" + c.name + "': '" +
                             cell + "' is not a number");
                        row_ok = false;
                    } else {
                        row[i] = v;
                    }
                }
            }
            if (row_ok && problem_total == 0) d.append_row(row);
        }
        if (problem_total != 0) {
            std::string msg = "dataset text: " + std::to_string(problem_total) +
                              " invalid value(s), first " + std::to_string(problems.size()) + ":";
            for (const std::string& p : problems) msg += "\n  " + p;
            throw std::runtime_error(msg);
        }
        return d;
    }

private:
    int add_column(const std::string& name, ColType type, int arity, Role role) {
        if (name.empty()) throw std::invalid_argument("column name must be non-empty");
        if (name.find(',') != std::string::npos || name.find(':') != std::string::npos)
            throw std::invalid_argument("column name '" + name + "' contains ',' or ':'");
        if (index_.count(name)) throw std::invalid_argument("duplicate column '" + name + "'");
        if (n_rows_ != 0)
            throw std::invalid_argument("cannot add column '" + name + "' after rows exist");
        Column c;
        c.name = name;
        c.type = type;
        c.arity = arity;
        c.role = role;
        index_.emplace(name, static_cast<int>(cols_.size()));
        cols_.push_back(std::move(c));
        return static_cast<int>(cols_.size()) - 1;
    }

    std::vector<Column> cols_;
    std::unordered_map<std::string, int> index_;
    std::size_t n_rows_ = 0;
};

}  // namespace causeval
