#include "lrqt/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "lrqt/error.hpp"

namespace lrqt {

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) throw InvalidArgument("csv header must not be empty");
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) {
        throw InvalidArgument("csv row has " + std::to_string(cells.size()) + " cells, header has " +
                              std::to_string(header_.size()));
    }
    rows_.push_back(std::move(cells));
}

std::string CsvTable::render(const std::string& stamp) const {
    std::ostringstream out;
    if (!stamp.empty()) out << stamp << '\n';
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out.str();
}

std::string reproducibility_stamp(const std::string& version, const std::vector<std::string>& args) {
    std::string s = "# lrqt " + version;
    for (const auto& a : args) s += " " + a;
    return s;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("cannot rename onto " + path.string());
    }
}

}  // namespace lrqt
