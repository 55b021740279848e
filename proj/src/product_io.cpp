#include "spltest/product_io.hpp"

#include "spltest/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace spltest {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> csv_split_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

std::string products_to_csv(const FeatureModel& fm,
                            std::span<const Product> suite) {
    std::string out;
    const int n = fm.feature_count();
    for (int i = 1; i <= n; ++i) {
        if (i > 1)
            out += ',';
        out += csv_escape(fm.feature_name(i));
    }
    out += '\n';
    for (const Product& p : suite) {
        if (p.size() != n)
            throw SuiteMismatchError("product is not total over the model");
        for (int i = 1; i <= n; ++i) {
            if (i > 1)
                out += ',';
            out += p.selected(i) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

std::vector<Product> products_from_csv(const FeatureModel& fm,
                                       const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line))
        throw SuiteMismatchError("suite file is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    const auto header = csv_split_row(line);
    const int n = fm.feature_count();
    if (static_cast<int>(header.size()) != n)
        throw SuiteMismatchError("suite has " + std::to_string(header.size()) +
                                 " columns but the model has " +
                                 std::to_string(n) + " features");
    for (int i = 1; i <= n; ++i) {
        if (header[static_cast<size_t>(i - 1)] != fm.feature_name(i))
            throw SuiteMismatchError("suite column " + std::to_string(i) + " is `" +
                                     header[static_cast<size_t>(i - 1)] +
                                     "` but the model feature is `" +
                                     fm.feature_name(i) + "`");
    }

    std::vector<Product> suite;
    int row_no = 1;
    while (std::getline(is, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto fields = csv_split_row(line);
        if (static_cast<int>(fields.size()) != n)
            throw SuiteMismatchError("row " + std::to_string(row_no) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(n));
        std::vector<bool> signs(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            const std::string& f = fields[static_cast<size_t>(i)];
            if (f == "1")
                signs[static_cast<size_t>(i)] = true;
            else if (f == "0")
                signs[static_cast<size_t>(i)] = false;
            else
                throw SuiteMismatchError("row " + std::to_string(row_no) +
                                         ": expected 0 or 1, got `" + f + "`");
        }
        suite.emplace_back(signs);
    }
    return suite;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw Error("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw Error("cannot rename " + tmp.string() + " to " + path.string() +
                    ": " + ec.message());
}

} // namespace spltest
