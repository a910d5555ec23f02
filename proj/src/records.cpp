#include "ringtherm/records.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ringtherm/errors.hpp"

namespace ringtherm {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void append_array(std::string& out, const std::vector<double>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    out += ']';
}

} // namespace

std::string format_record(const EnsembleRecord& record) {
    std::string out;
    out += "{\"seed\":";
    out += std::to_string(record.seed);
    out += ",\"n_sites\":";
    out += std::to_string(record.n_sites);
    out += ",\"excited_site\":";
    out += std::to_string(record.excited_site);
    out += ",\"couplings\":";
    append_array(out, record.couplings);
    out += ",\"intensities\":";
    append_array(out, record.intensities);
    out += '}';
    return out;
}

EnsembleRecord parse_record(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("corrupt record: ") + e.what());
    }
    if (!j.is_object()) throw IoError("corrupt record: not an object");
    try {
        EnsembleRecord r;
        r.seed = j.at("seed").get<std::uint64_t>();
        r.n_sites = j.at("n_sites").get<int>();
        r.excited_site = j.at("excited_site").get<int>();
        r.couplings = j.at("couplings").get<std::vector<double>>();
        r.intensities = j.at("intensities").get<std::vector<double>>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("corrupt record: ") + e.what());
    }
}

std::vector<EnsembleRecord> read_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open record file " + path.string());
    std::vector<EnsembleRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            records.push_back(parse_record(line));
        } catch (const IoError& e) {
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (in.bad()) throw IoError("read failure on " + path.string());
    return records;
}

std::string format_intensity_csv(const std::vector<EnsembleRecord>& records) {
    std::string out = "n_sites,excited_site,intensities\n";
    for (const auto& r : records) {
        out += std::to_string(r.n_sites);
        out += ',';
        out += std::to_string(r.excited_site);
        for (double v : r.intensities) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::vector<EnsembleRecord> read_intensity_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open intensity file " + path.string());
    std::vector<EnsembleRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("n_sites,", 0) == 0) continue; // header
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() < 3)
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": too few columns");
        try {
            EnsembleRecord r;
            r.seed = static_cast<std::uint64_t>(records.size());
            r.n_sites = std::stoi(fields[0]);
            r.excited_site = std::stoi(fields[1]);
            for (std::size_t i = 2; i < fields.size(); ++i)
                r.intensities.push_back(std::stod(fields[i]));
            if (static_cast<int>(r.intensities.size()) != r.n_sites)
                throw IoError("intensity count does not match n_sites");
            records.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (in.bad()) throw IoError("read failure on " + path.string());
    return records;
}

std::string format_grid_csv(const std::vector<PhaseCell>& cells) {
    std::string out = "n_sites,eta,g2_mean,g2_std,lambda_mean,chiral\n";
    for (const auto& c : cells) {
        out += std::to_string(c.n_sites);
        out += ',';
        out += format_double(c.eta);
        out += ',';
        out += format_double(c.g2_mean);
        out += ',';
        out += format_double(c.g2_std);
        out += ',';
        out += format_double(c.lambda_mean);
        out += ',';
        out += c.chiral ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string format_size_study_csv(const std::vector<SizeStudyRow>& rows) {
    std::string out = "ensemble_size,n_sites,g2_mean,g2_std\n";
    for (const auto& r : rows) {
        out += std::to_string(r.ensemble_size);
        out += ',';
        out += std::to_string(r.n_sites);
        out += ',';
        out += format_double(r.g2_mean);
        out += ',';
        out += format_double(r.g2_std);
        out += '\n';
    }
    return out;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot create " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out.good()) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write failure on " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ec2;
        std::filesystem::remove(tmp, ec2);
        throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (!in.good() && !in.eof()) throw IoError("read failure on " + path.string());
    return buffer.str();
}

} // namespace ringtherm
