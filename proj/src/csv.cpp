#include "rhobench/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "rhobench/error.hpp"

namespace rhobench::csv
{
    std::string format_number(double value)
    {
        if (std::isnan(value))
            return "nan";
        if (std::isinf(value))
            return value > 0 ? "inf" : "-inf";
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), value);
        return std::string(buf, res.ptr);
    }

    std::string format_rho(std::optional<double> rho)
    {
        return rho ? format_number(*rho) : "None";
    }

    double parse_number(std::string_view text)
    {
        if (text == "inf" || text == "+inf")
            return INFINITY;
        if (text == "-inf")
            return -INFINITY;
        if (text == "nan")
            return NAN;
        double value = 0.0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size())
            throw Error(ErrorCode::IoError, "malformed number '" + std::string(text) + "'");
        return value;
    }

    std::optional<double> parse_rho(std::string_view text)
    {
        if (text == "None" || text == "none" || text.empty())
            return std::nullopt;
        return parse_number(text);
    }

    std::vector<std::string> split(std::string_view line, char sep)
    {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (true)
        {
            const auto pos = line.find(sep, start);
            if (pos == std::string_view::npos)
            {
                out.emplace_back(line.substr(start));
                return out;
            }
            out.emplace_back(line.substr(start, pos - start));
            start = pos + 1;
        }
    }

    Table Table::read(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw Error(ErrorCode::IoError, "cannot open " + path);

        Table table;
        table.path_ = path;
        std::string line;
        if (!std::getline(in, line))
            throw Error(ErrorCode::IoError, path + " is empty");
        table.header_ = split(line);
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            auto row = split(line);
            if (row.size() != table.header_.size())
                throw Error(ErrorCode::IoError, path + ": row has " + std::to_string(row.size()) +
                                                    " fields, header has " + std::to_string(table.header_.size()));
            table.rows_.push_back(std::move(row));
        }
        return table;
    }

    std::size_t Table::column(std::string_view name) const
    {
        for (std::size_t i = 0; i < header_.size(); ++i)
            if (header_[i] == name)
                return i;
        throw Error(ErrorCode::IoError, path_ + ": missing column '" + std::string(name) + "'");
    }
}
