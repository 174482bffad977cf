// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

// Tabular output in CSV, JSON or Markdown.

#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace helinear::cli {

enum class Format { csv, json, markdown };

class Table {
  public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<nlohmann::json> row) { rows_.push_back(std::move(row)); }

    const std::vector<std::string> &columns() const { return columns_; }
    const std::vector<std::vector<nlohmann::json>> &rows() const { return rows_; }

    std::string render(Format f) const {
        switch (f) {
            case Format::csv:
                return render_csv();
            case Format::json:
                return render_json();
            case Format::markdown:
                return render_markdown();
        }
        return {};
    }

    /// Cell text for CSV and Markdown; floats use four decimals.
    static std::string cell_text(const nlohmann::json &v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number_float()) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.4f", v.get<double>());
            return buf;
        }
        return v.dump();
    }

  private:
    static std::string csv_field(const std::string &s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        return out + "\"";
    }

    std::string render_csv() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << csv_field(columns_[i]);
        os << '\n';
        for (const auto &row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
            os << '\n';
        }
        return os.str();
    }

    std::string render_json() const {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto &row : rows_) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = row[i];
            arr.push_back(std::move(obj));
        }
        return arr.dump(2) + "\n";
    }

    std::string render_markdown() const {
        std::ostringstream os;
        os << '|';
        for (const auto &c : columns_) os << ' ' << c << " |";
        os << "\n|";
        for (std::size_t i = 0; i < columns_.size(); ++i) os << (rows_.empty() || !rows_[0][i].is_string() ? " ---: |" : " --- |");
        os << '\n';
        for (const auto &row : rows_) {
            os << '|';
            for (const auto &v : row) os << ' ' << cell_text(v) << " |";
            os << '\n';
        }
        return os.str();
    }

    std::vector<std::string> columns_;
    std::vector<std::vector<nlohmann::json>> rows_;
};

}  // namespace helinear::cli
