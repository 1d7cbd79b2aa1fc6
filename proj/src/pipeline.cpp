#include "qgenome/pipeline.hpp"

#include "qgenome/csv.hpp"
#include "qgenome/labels.hpp"
#include "qgenome/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qgenome {

namespace {

std::string normalize_sequence(std::string_view raw, const std::string &where) {
    std::string seq;
    seq.reserve(raw.size());
    for (char ch : raw) {
        const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (up != 'A' && up != 'C' && up != 'G' && up != 'T' && up != 'N') {
            throw std::runtime_error(where + ": invalid character '" + std::string(1, ch) + "' in sequence");
        }
        seq.push_back(up);
    }
    if (seq.empty()) {
        throw std::runtime_error(where + ": empty sequence");
    }
    return seq;
}

int parse_label(std::string_view field, const std::string &where) {
    field = csv::trim(field);
    if (field == "0") {
        return 0;
    }
    if (field == "1") {
        return 1;
    }
    throw std::runtime_error(where + ": label must be 0 or 1, got '" + std::string(field) + "'");
}

// -1 for A C G T -> 0 1 2 3 mapping failure
int base_code(char c) {
    switch (c) {
        case 'A': return 0;
        case 'C': return 1;
        case 'G': return 2;
        case 'T': return 3;
        default: return -1;
    }
}

struct CsvColumns {
    std::size_t width = 0;
    std::optional<std::size_t> sequence;
    std::optional<std::size_t> label;
};

CsvColumns parse_header(const std::string &line) {
    CsvColumns cols;
    const auto fields = csv::split(csv::trim(line));
    cols.width = fields.size();
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto name = csv::trim(fields[i]);
        if (name == "sequence") {
            cols.sequence = i;
        } else if (name == "label") {
            cols.label = i;
        }
    }
    return cols;
}

}  // namespace

DatasetFormat parse_dataset_format(const std::string &name) {
    if (name == "csv" || name == "CSV") {
        return DatasetFormat::CSV;
    }
    if (name == "fasta" || name == "FASTA") {
        return DatasetFormat::FASTA;
    }
    throw std::invalid_argument("unknown dataset format '" + name + "' (expected csv or fasta)");
}

std::string to_string(DatasetFormat format) {
    return format == DatasetFormat::CSV ? "csv" : "fasta";
}

RawDataset RawDataset::subset(const std::vector<Eigen::Index> &indices) const {
    RawDataset out;
    out.source = source;
    for (const auto i : indices) {
        out.sequences.push_back(sequences.at(static_cast<std::size_t>(i)));
        out.labels.push_back(labels.at(static_cast<std::size_t>(i)));
    }
    return out;
}

RawDataset parse_csv_dataset(std::istream &in, const std::string &source) {
    RawDataset ds;
    ds.source = source;
    std::string line;
    std::size_t line_number = 0;
    std::optional<CsvColumns> cols;
    while (std::getline(in, line)) {
        ++line_number;
        if (csv::trim(line).empty()) {
            continue;
        }
        const std::string where = source + ":" + std::to_string(line_number);
        if (!cols) {
            cols = parse_header(line);
            if (!cols->sequence || !cols->label) {
                throw std::runtime_error(where + ": CSV header must contain 'sequence' and 'label' columns");
            }
            continue;
        }
        const auto fields = csv::split(csv::trim(line));
        if (fields.size() != cols->width) {
            throw std::runtime_error(where + ": malformed row, expected " + std::to_string(cols->width) + " fields, got " + std::to_string(fields.size()));
        }
        ds.sequences.push_back(normalize_sequence(csv::trim(fields[*cols->sequence]), where));
        ds.labels.push_back(parse_label(fields[*cols->label], where));
    }
    if (ds.sequences.empty()) {
        throw std::runtime_error(source + ": no records");
    }
    return ds;
}

RawDataset parse_fasta_dataset(std::istream &in, const std::string &source) {
    RawDataset ds;
    ds.source = source;
    std::string line;
    std::size_t line_number = 0;
    std::string current;
    std::string current_where;
    bool open = false;
    auto flush = [&]() {
        if (open) {
            ds.sequences.push_back(normalize_sequence(current, current_where));
        }
        current.clear();
    };
    while (std::getline(in, line)) {
        ++line_number;
        const auto content = csv::trim(line);
        if (content.empty()) {
            continue;
        }
        const std::string where = source + ":" + std::to_string(line_number);
        if (content.front() == '>') {
            flush();
            std::istringstream tokens{ std::string(content.substr(1)) };
            std::string token;
            std::optional<int> label;
            while (tokens >> token) {
                if (token.rfind("label=", 0) == 0) {
                    label = parse_label(std::string_view(token).substr(6), where);
                }
            }
            if (!label) {
                throw std::runtime_error(where + ": FASTA header lacks a label=<0|1> token");
            }
            ds.labels.push_back(*label);
            current_where = where;
            open = true;
            continue;
        }
        if (!open) {
            throw std::runtime_error(where + ": sequence data before the first FASTA header");
        }
        current.append(content);
    }
    flush();
    if (ds.sequences.empty()) {
        throw std::runtime_error(source + ": no records");
    }
    return ds;
}

RawDataset load_dataset(const std::filesystem::path &path, DatasetFormat format) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open dataset file '" + path.string() + "'");
    }
    return format == DatasetFormat::CSV ? parse_csv_dataset(in, path.string()) : parse_fasta_dataset(in, path.string());
}

std::vector<std::string> read_sequence_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open input file '" + path.string() + "'");
    }
    std::vector<std::string> out;
    std::string line;
    std::size_t line_number = 0;
    std::optional<CsvColumns> cols;
    while (std::getline(in, line)) {
        ++line_number;
        if (csv::trim(line).empty()) {
            continue;
        }
        const std::string where = path.string() + ":" + std::to_string(line_number);
        if (!cols) {
            cols = parse_header(line);
            if (!cols->sequence) {
                throw std::runtime_error(where + ": CSV header must contain a 'sequence' column");
            }
            continue;
        }
        const auto fields = csv::split(csv::trim(line));
        if (fields.size() != cols->width) {
            throw std::runtime_error(where + ": malformed row, expected " + std::to_string(cols->width) + " fields, got " + std::to_string(fields.size()));
        }
        out.push_back(normalize_sequence(csv::trim(fields[*cols->sequence]), where));
    }
    return out;
}

std::string kmer_name(Eigen::Index column, int k) {
    static constexpr char kBases[] = { 'A', 'C', 'G', 'T' };
    std::string name(static_cast<std::size_t>(k), 'A');
    for (int p = k - 1; p >= 0; --p) {
        name[static_cast<std::size_t>(p)] = kBases[column & 3];
        column >>= 2;
    }
    return name;
}

Eigen::MatrixXd vectorize_kmers(const std::vector<std::string> &sequences, int k) {
    if (k < 1 || k > 8) {
        throw std::invalid_argument("k-mer length must be in [1, 8]");
    }
    const Eigen::Index width = Eigen::Index{ 1 } << (2 * k);
    const Eigen::Index mask = width - 1;
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sequences.size()), width);
    for (std::size_t r = 0; r < sequences.size(); ++r) {
        const std::string &seq = sequences[r];
        if (seq.size() < static_cast<std::size_t>(k)) {
            throw std::invalid_argument("sequence " + std::to_string(r) + " is shorter than k = " + std::to_string(k));
        }
        const double windows = static_cast<double>(seq.size() - static_cast<std::size_t>(k) + 1);
        Eigen::Index code = 0;
        int valid = 0;  // length of the current N-free run
        for (char c : seq) {
            const int b = base_code(c);
            if (b < 0) {
                valid = 0;
                code = 0;
                continue;
            }
            code = ((code << 2) | b) & mask;
            if (++valid >= k) {
                X(static_cast<Eigen::Index>(r), code) += 1.0;
            }
        }
        X.row(static_cast<Eigen::Index>(r)) /= windows;
    }
    return X;
}

PcaModel pca_fit(const Eigen::Ref<const Eigen::MatrixXd> &X, int n_components) {
    if (X.rows() < 5) {
        throw std::invalid_argument("PCA needs at least 5 rows, got " + std::to_string(X.rows()));
    }
    if (n_components < 1 || X.cols() < n_components) {
        throw std::invalid_argument("PCA needs at least " + std::to_string(n_components) + " columns, got " + std::to_string(X.cols()));
    }
    if (!X.allFinite()) {
        throw std::invalid_argument("PCA input has non-finite values");
    }
    PcaModel model;
    model.mean = X.colwise().mean().transpose();
    const Eigen::MatrixXd centered = X.rowwise() - model.mean.transpose();
    const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(X.rows() - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("PCA eigendecomposition failed");
    }
    const Eigen::Index d = X.cols();
    const double top = std::max(solver.eigenvalues()(d - 1), 0.0);
    const double floor = 1e-12 * std::max(top, 1e-300);
    model.components.resize(n_components, d);
    model.explained_variance.resize(n_components);
    for (int c = 0; c < n_components; ++c) {
        const Eigen::Index src = d - 1 - c;  // eigenvalues come ascending
        Eigen::VectorXd v = solver.eigenvectors().col(src);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0.0) {
            v = -v;
        }
        model.components.row(c) = v.transpose();
        double variance = solver.eigenvalues()(src);
        if (!(variance > floor)) {
            variance = 0.0;
            model.rank_deficient = true;
        }
        model.explained_variance(c) = variance;
    }
    return model;
}

Eigen::MatrixXd pca_transform(const PcaModel &model, const Eigen::Ref<const Eigen::MatrixXd> &X) {
    if (X.cols() != model.mean.size()) {
        throw std::invalid_argument("PCA model was fitted on " + std::to_string(model.mean.size()) + " columns, input has " + std::to_string(X.cols()));
    }
    return (X.rowwise() - model.mean.transpose()) * model.components.transpose();
}

AngleScaler fit_angle_scaler(const Eigen::Ref<const Eigen::MatrixXd> &X, double lo, double hi) {
    if (!(lo < hi)) {
        throw std::invalid_argument("angle range needs lo < hi");
    }
    if (X.rows() == 0) {
        throw std::invalid_argument("cannot fit a scaler on zero rows");
    }
    if (!X.allFinite()) {
        throw std::invalid_argument("scaler input has non-finite values");
    }
    AngleScaler s;
    s.column_min = X.colwise().minCoeff().transpose();
    s.column_max = X.colwise().maxCoeff().transpose();
    s.lo = lo;
    s.hi = hi;
    return s;
}

Eigen::MatrixXd scale_to_angles(const AngleScaler &scaler, const Eigen::Ref<const Eigen::MatrixXd> &X) {
    if (X.cols() != scaler.column_min.size()) {
        throw std::invalid_argument("scaler was fitted on " + std::to_string(scaler.column_min.size()) + " columns, input has " + std::to_string(X.cols()));
    }
    if (!X.allFinite()) {
        throw std::invalid_argument("scaler input has non-finite values");
    }
    Eigen::MatrixXd out(X.rows(), X.cols());
    const double mid = 0.5 * (scaler.lo + scaler.hi);
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
        const double lo = scaler.column_min(c);
        const double span = scaler.column_max(c) - lo;
        for (Eigen::Index r = 0; r < X.rows(); ++r) {
            if (!(span > 0.0)) {
                out(r, c) = mid;
                continue;
            }
            const double v = scaler.lo + (X(r, c) - lo) / span * (scaler.hi - scaler.lo);
            out(r, c) = std::clamp(v, scaler.lo, scaler.hi);
        }
    }
    return out;
}

namespace {

std::map<int, std::vector<Eigen::Index>> indices_by_class(const std::vector<int> &labels) {
    std::map<int, std::vector<Eigen::Index>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        by_class[labels[i]].push_back(static_cast<Eigen::Index>(i));
    }
    return by_class;
}

}  // namespace

SplitIndices stratified_split(const std::vector<int> &labels, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw std::invalid_argument("test fraction must lie in (0, 1)");
    }
    auto by_class = indices_by_class(labels);
    if (by_class.size() < 2) {
        throw std::invalid_argument("stratified split needs both classes");
    }
    Rng rng(seed);
    SplitIndices split;
    for (auto &[label, members] : by_class) {
        if (members.size() < 2) {
            throw std::invalid_argument("class " + std::to_string(label) + " has fewer than 2 samples");
        }
        rng.shuffle(members);
        const auto n = static_cast<long>(members.size());
        const long n_test = std::clamp(std::lround(test_fraction * static_cast<double>(n)), 1L, n - 1);
        split.test.insert(split.test.end(), members.begin(), members.begin() + n_test);
        split.train.insert(split.train.end(), members.begin() + n_test, members.end());
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

std::vector<Eigen::Index> stratified_subset(const std::vector<int> &labels, std::size_t size, std::uint64_t seed) {
    if (size >= labels.size()) {
        std::vector<Eigen::Index> all(labels.size());
        for (std::size_t i = 0; i < all.size(); ++i) {
            all[i] = static_cast<Eigen::Index>(i);
        }
        return all;
    }
    auto by_class = indices_by_class(labels);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<Eigen::Index> out;
    std::size_t remaining = size;
    std::size_t classes_left = by_class.size();
    std::size_t pool_left = labels.size();
    for (auto &[label, members] : by_class) {
        rng.shuffle(members);
        std::size_t take = classes_left == 1 ? remaining : static_cast<std::size_t>(std::llround(static_cast<double>(remaining) * static_cast<double>(members.size()) / static_cast<double>(pool_left)));
        take = std::min(take, members.size());
        out.insert(out.end(), members.begin(), members.begin() + static_cast<long>(take));
        remaining -= take;
        pool_left -= members.size();
        --classes_left;
    }
    std::sort(out.begin(), out.end());
    return out;
}

void PipelineConfig::validate() const {
    if (kmer_k < 1 || kmer_k > 8) {
        throw std::invalid_argument("kmer_k must be in [1, 8]");
    }
    if (pca_dims != 4) {
        throw std::invalid_argument("pca_dims is fixed at 4");
    }
    if (!(angle_lo < angle_hi)) {
        throw std::invalid_argument("angle_range needs lo < hi");
    }
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw std::invalid_argument("test_fraction must lie in (0, 1)");
    }
    if (subset_size && *subset_size < 4) {
        throw std::invalid_argument("subset_size must be at least 4");
    }
}

Eigen::MatrixXd FittedPipeline::transform(const std::vector<std::string> &sequences) const {
    if (sequences.empty()) {
        return Eigen::MatrixXd(0, pca.components.rows());
    }
    return scale_to_angles(scaler, pca_transform(pca, vectorize_kmers(sequences, kmer_k)));
}

PreparedData prepare_data(const RawDataset &dataset, const PipelineConfig &config) {
    config.validate();
    PreparedData out;
    if (config.subset_size) {
        out.data = dataset.subset(stratified_subset(dataset.labels, *config.subset_size, config.seed));
    } else {
        out.data = dataset;
    }
    out.split = stratified_split(out.data.labels, config.test_fraction, config.seed);

    const RawDataset train = out.data.subset(out.split.train);
    const RawDataset test = out.data.subset(out.split.test);

    out.pipeline.kmer_k = config.kmer_k;
    const Eigen::MatrixXd counts_train = vectorize_kmers(train.sequences, config.kmer_k);
    out.pipeline.pca = pca_fit(counts_train, config.pca_dims);
    const Eigen::MatrixXd scores_train = pca_transform(out.pipeline.pca, counts_train);
    out.pipeline.scaler = fit_angle_scaler(scores_train, config.angle_lo, config.angle_hi);

    out.X_train = scale_to_angles(out.pipeline.scaler, scores_train);
    out.X_test = out.pipeline.transform(test.sequences);
    out.y_train = to_signed_labels(train.labels);
    out.y_test = to_signed_labels(test.labels);
    return out;
}

}  // namespace qgenome
