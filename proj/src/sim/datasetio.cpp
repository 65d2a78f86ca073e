#include "aurakit/sim/datasetio.hpp"

#include <cmath>
#include <sstream>

#include "aurakit/core/error.hpp"
#include "aurakit/core/text.hpp"

namespace aurakit::sim {

using analysis::ComplexSpectrum;
using analysis::FloatImage;
using analysis::GrayImage;
using analysis::HeightMap;
using analysis::OrientationMap;
using analysis::Sinogram;
using analysis::Spectrum;

namespace {

constexpr const char* kProvSuffix = ".prov.json";

std::string csv_header(const char* payload, const std::string& unit,
                       const std::string& y_unit) {
    std::string h = std::string("# payload: ") + payload + "\n";
    h += "# unit: " + (unit.empty() ? std::string("1") : unit) + "\n";
    if (!y_unit.empty()) h += "# y_unit: " + y_unit + "\n";
    return h;
}

std::string spectrum_csv(const Spectrum& s) {
    std::string out = csv_header("spectrum", s.x_unit, s.y_unit);
    for (std::size_t i = 0; i < s.x.size(); ++i)
        out += fmt_double(s.x[i]) + "," + fmt_double(s.y[i]) + "\n";
    return out;
}

std::string complex_csv(const ComplexSpectrum& s) {
    std::string out = csv_header("complex_spectrum", s.x_unit, "");
    for (std::size_t i = 0; i < s.x.size(); ++i)
        out += fmt_double(s.x[i]) + "," + fmt_double(s.v[i].real()) + "," +
               fmt_double(s.v[i].imag()) + "\n";
    return out;
}

std::string tga_csv(const TgaCurve& c) {
    std::string out = csv_header("tga_curve", c.mass.x_unit, c.mass.y_unit);
    for (std::size_t i = 0; i < c.mass.x.size(); ++i) {
        out += fmt_double(c.mass.x[i]) + "," + fmt_double(c.mass.y[i]);
        if (c.heat_flow) out += "," + fmt_double(c.heat_flow->y[i]);
        out += "\n";
    }
    return out;
}

std::string pgm_text(const GrayImage& img) {
    std::string out = "P2\n" + std::to_string(img.cols) + " " + std::to_string(img.rows) +
                      "\n255\n";
    for (int r = 0; r < img.rows; ++r) {
        for (int c = 0; c < img.cols; ++c) {
            out += std::to_string(int(img.at(r, c)));
            out += (c + 1 == img.cols) ? '\n' : ' ';
        }
    }
    return out;
}

std::string fgrid_text(const char* payload, int rows, int cols, const double* data) {
    std::string out = std::string("FGRID ") + payload + " " + std::to_string(rows) + " " +
                      std::to_string(cols) + "\n";
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            out += fmt_double(data[std::size_t(r) * cols + c]);
            out += (c + 1 == cols) ? '\n' : ' ';
        }
    }
    return out;
}

struct CsvContent {
    std::string payload;
    std::string unit, y_unit;
    std::vector<std::vector<double>> rows;
};

CsvContent parse_csv(const std::string& text) {
    CsvContent out;
    for (const auto& raw : split_lines(text)) {
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto colon = line.find(':');
            if (colon == std::string::npos) continue;
            std::string key = trim(line.substr(1, colon - 1));
            std::string value = trim(line.substr(colon + 1));
            if (key == "payload") out.payload = value;
            if (key == "unit") out.unit = value;
            if (key == "y_unit") out.y_unit = value;
            continue;
        }
        std::vector<double> row;
        for (const auto& cell : split(line, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (...) {
                throw Error("ParseError", "bad CSV cell '" + cell + "'");
            }
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

Dataset from_csv(const CsvContent& c) {
    Dataset d;
    if (c.payload == "complex_spectrum") {
        ComplexSpectrum s;
        s.x_unit = c.unit;
        for (const auto& row : c.rows) {
            if (row.size() != 3) throw Error("ParseError", "complex spectrum rows need x,re,im");
            s.x.push_back(row[0]);
            s.v.emplace_back(row[1], row[2]);
        }
        d.kind = model::PayloadKind::complex_spectrum;
        d.payload = std::move(s);
    } else if (c.payload == "tga_curve") {
        TgaCurve curve;
        curve.mass.x_unit = c.unit;
        curve.mass.y_unit = c.y_unit;
        bool has_heat = !c.rows.empty() && c.rows[0].size() == 3;
        Spectrum hf;
        hf.x_unit = c.unit;
        for (const auto& row : c.rows) {
            if (row.size() < 2) throw Error("ParseError", "tga rows need T,mass");
            curve.mass.x.push_back(row[0]);
            curve.mass.y.push_back(row[1]);
            if (has_heat && row.size() == 3) {
                hf.x.push_back(row[0]);
                hf.y.push_back(row[2]);
            }
        }
        if (has_heat) curve.heat_flow = std::move(hf);
        d.kind = model::PayloadKind::tga_curve;
        d.payload = std::move(curve);
    } else {
        Spectrum s;
        s.x_unit = c.unit;
        s.y_unit = c.y_unit;
        for (const auto& row : c.rows) {
            if (row.size() < 2) throw Error("ParseError", "spectrum rows need x,y");
            s.x.push_back(row[0]);
            s.y.push_back(row[1]);
        }
        d.kind = model::PayloadKind::spectrum;
        d.payload = std::move(s);
    }
    return d;
}

Dataset from_pgm(const std::string& text) {
    std::istringstream in(text);
    std::string magic;
    in >> magic;
    if (magic != "P2") throw Error("ParseError", "only P2 graymaps are supported");
    int cols = 0, rows = 0, maxv = 0;
    in >> cols >> rows >> maxv;
    if (cols <= 0 || rows <= 0 || maxv <= 0 || maxv > 255)
        throw Error("ParseError", "bad PGM header");
    GrayImage img;
    img.rows = rows;
    img.cols = cols;
    img.px.resize(std::size_t(rows) * cols);
    for (auto& p : img.px) {
        int v;
        if (!(in >> v) || v < 0 || v > maxv) throw Error("ParseError", "bad PGM pixel");
        p = std::uint8_t(v);
    }
    Dataset d;
    d.kind = model::PayloadKind::image;
    d.payload = std::move(img);
    return d;
}

Dataset from_fgrid(const std::string& text) {
    std::istringstream in(text);
    std::string magic, payload;
    int rows = 0, cols = 0;
    in >> magic >> payload >> rows >> cols;
    if (magic != "FGRID" || rows <= 0 || cols <= 0)
        throw Error("ParseError", "bad FGRID header");
    std::vector<double> data(std::size_t(rows) * cols);
    for (auto& v : data)
        if (!(in >> v)) throw Error("ParseError", "short FGRID data");

    Dataset d;
    if (payload == "height_map") {
        d.kind = model::PayloadKind::height_map;
        d.payload = HeightMap{rows, cols, std::move(data)};
    } else if (payload == "sinogram") {
        d.kind = model::PayloadKind::sinogram;
        d.payload = Sinogram{rows, cols, std::move(data)};
    } else if (payload == "orientation_map") {
        d.kind = model::PayloadKind::orientation_map;
        d.payload = OrientationMap{rows, cols, std::move(data)};
    } else if (payload == "image") {
        d.kind = model::PayloadKind::image;
        d.payload = FloatImage{rows, cols, std::move(data)};
    } else {
        throw Error("ParseError", "unknown FGRID payload '" + payload + "'");
    }
    return d;
}

}  // namespace

std::string dataset_extension(model::PayloadKind kind) {
    switch (kind) {
        case model::PayloadKind::spectrum:
        case model::PayloadKind::complex_spectrum:
        case model::PayloadKind::tga_curve:
        case model::PayloadKind::table:
            return ".csv";
        case model::PayloadKind::image:
            return ".pgm";
        default:
            return ".fgrid";
    }
}

std::filesystem::path write_dataset(const Dataset& ds, const std::filesystem::path& path) {
    std::string body;
    switch (ds.kind) {
        case model::PayloadKind::spectrum: body = spectrum_csv(ds.as<Spectrum>()); break;
        case model::PayloadKind::complex_spectrum:
            body = complex_csv(ds.as<ComplexSpectrum>());
            break;
        case model::PayloadKind::tga_curve: body = tga_csv(ds.as<TgaCurve>()); break;
        case model::PayloadKind::image:
            if (std::holds_alternative<GrayImage>(ds.payload)) {
                body = pgm_text(ds.as<GrayImage>());
            } else {
                const auto& img = ds.as<FloatImage>();
                body = fgrid_text("image", img.rows, img.cols, img.px.data());
            }
            break;
        case model::PayloadKind::height_map: {
            const auto& h = ds.as<HeightMap>();
            body = fgrid_text("height_map", h.rows, h.cols, h.z.data());
            break;
        }
        case model::PayloadKind::sinogram: {
            const auto& s = ds.as<Sinogram>();
            body = fgrid_text("sinogram", s.n_angles, s.n_detectors, s.v.data());
            break;
        }
        case model::PayloadKind::orientation_map: {
            const auto& m = ds.as<OrientationMap>();
            body = fgrid_text("orientation_map", m.rows, m.cols, m.theta.data());
            break;
        }
        default:
            throw Error("IoError", "payload kind has no file form");
    }
    write_file(path, body);
    if (!ds.provenance.is_null())
        write_file(path.string() + kProvSuffix, ds.provenance.dump(2) + "\n");
    return path;
}

Dataset read_dataset(const std::filesystem::path& path) {
    std::string text = read_file(path);
    Dataset d;
    if (text.rfind("P2", 0) == 0)
        d = from_pgm(text);
    else if (text.rfind("FGRID", 0) == 0)
        d = from_fgrid(text);
    else
        d = from_csv(parse_csv(text));

    std::filesystem::path prov = path.string() + kProvSuffix;
    if (std::filesystem::exists(prov)) {
        try {
            d.provenance = nlohmann::json::parse(read_file(prov));
        } catch (const nlohmann::json::exception& e) {
            throw Error("ParseError", std::string("bad provenance sidecar: ") + e.what());
        }
    }
    return d;
}

void write_composition(const analysis::Composition& c, const std::filesystem::path& path) {
    std::string out = "# payload: composition\n";
    out += std::string("# basis: ") +
           (c.basis == analysis::CompositionBasis::weight ? "weight" : "atomic") + "\n";
    out += "element,atomic_mass,fraction\n";
    for (const auto& e : c.entries)
        out += e.element + "," + fmt_double(e.atomic_mass) + "," + fmt_double(e.fraction) + "\n";
    write_file(path, out);
}

analysis::Composition read_composition(const std::filesystem::path& path) {
    analysis::Composition c;
    bool header_seen = false;
    for (const auto& raw : split_lines(read_file(path))) {
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("basis:") != std::string::npos)
                c.basis = line.find("atomic") != std::string::npos
                              ? analysis::CompositionBasis::atomic
                              : analysis::CompositionBasis::weight;
            continue;
        }
        if (!header_seen) {
            header_seen = true;  // column header row
            continue;
        }
        auto cells = split(line, ',');
        if (cells.size() != 3) throw Error("ParseError", "composition rows need 3 cells");
        try {
            c.entries.push_back({trim(cells[0]), std::stod(cells[1]), std::stod(cells[2])});
        } catch (...) {
            throw Error("ParseError", "bad composition row '" + line + "'");
        }
    }
    if (c.entries.empty()) throw Error("ParseError", "composition file has no entries");
    return c;
}

void write_table(const std::vector<std::string>& columns,
                 const std::vector<std::vector<std::string>>& rows,
                 const std::filesystem::path& path) {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i)
        out += columns[i] + (i + 1 == columns.size() ? "\n" : ",");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out += row[i] + (i + 1 == row.size() ? "\n" : ",");
    }
    write_file(path, out);
}

}  // namespace aurakit::sim
