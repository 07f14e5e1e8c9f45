#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rhobench::csv
{
    /// Shortest representation that parses back to the same double; "inf"/"-inf"/"nan" otherwise.
    std::string format_number(double value);

    /// "None" for an absent plateau size.
    std::string format_rho(std::optional<double> rho);

    double parse_number(std::string_view text);
    std::optional<double> parse_rho(std::string_view text);

    std::vector<std::string> split(std::string_view line, char sep = ',');

    /// Header-indexed view over a CSV file held in memory.
    class Table
    {
    public:
        static Table read(const std::string &path);

        const std::vector<std::string> &header() const { return header_; }
        const std::vector<std::vector<std::string>> &rows() const { return rows_; }
        std::size_t column(std::string_view name) const;

    private:
        std::string path_;
        std::vector<std::string> header_;
        std::vector<std::vector<std::string>> rows_;
    };
}
