#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "repdiff/pipeline.hpp"

namespace repdiff {

namespace {

// Product/quotient expressions over exact tokens: INT, sqrtN, d.
// Grammar: expr := product ('/' product)* ; product := factor ('*' factor)*.
// No decimal literals: exact quantities only.
struct ParsedExpression {
    QuadraticNumber numerator_unit;  // with the symbolic d divided out
    mpz_class denominator = 1;
    bool has_digit_symbol = false;
};

ParsedExpression parse_exact_expression(const std::string& text, const std::string& field) {
    ParsedExpression out;
    out.numerator_unit = QuadraticNumber(mpz_class(1));

    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("config field '" + field + "': " + why + " in '" + text + "'");
    };

    std::size_t i = 0;
    bool in_denominator = false;
    bool expect_factor = true;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '*' || c == '/') {
            if (expect_factor) fail("operator without operand");
            if (c == '/') in_denominator = true;  // later '*' factors stay in the denominator
            expect_factor = true;
            ++i;
            continue;
        }
        if (!expect_factor) fail("missing operator between factors");
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            mpz_class value(text.substr(start, i - start), 10);
            if (in_denominator)
                out.denominator *= value;
            else
                out.numerator_unit = out.numerator_unit * QuadraticNumber(value);
        } else if (text.compare(i, 4, "sqrt") == 0) {
            i += 4;
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (start == i) fail("sqrt needs a radicand");
            long radicand = std::stol(text.substr(start, i - start));
            QuadraticNumber root = QuadraticNumber::sqrt_of(radicand);
            if (in_denominator)
                out.numerator_unit = out.numerator_unit * root.inverse();
            else
                out.numerator_unit = out.numerator_unit * root;
        } else if (c == 'd') {
            ++i;
            if (in_denominator) fail("the digit symbol d may not appear in a denominator");
            if (out.has_digit_symbol) fail("the digit symbol d may appear at most once");
            out.has_digit_symbol = true;
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
        expect_factor = false;
    }
    if (expect_factor) fail("dangling operator");
    return out;
}

using Sections = std::map<std::string, std::map<std::string, std::string>>;

Sections parse_ini(std::istream& in, const std::string& origin) {
    Sections sections;
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument(origin + ":" + std::to_string(line_no) + ": unterminated section");
            section = line.substr(1, line.size() - 2);
            sections[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(origin + ":" + std::to_string(line_no) + ": expected key = value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        key.erase(key.find_last_not_of(" \t") + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        if (section.empty())
            throw std::invalid_argument(origin + ":" + std::to_string(line_no) + ": key outside a section");
        sections[section][key] = value;
    }
    return sections;
}

class SectionReader {
public:
    SectionReader(const Sections& sections, std::string origin) : sections_(sections), origin_(std::move(origin)) {}

    std::string require(const std::string& section, const std::string& key) const {
        auto sec = sections_.find(section);
        if (sec == sections_.end())
            throw std::invalid_argument(origin_ + ": missing section [" + section + "]");
        auto it = sec->second.find(key);
        if (it == sec->second.end())
            throw std::invalid_argument(origin_ + ": missing field '" + key + "' in [" + section + "]");
        return it->second;
    }

    std::string optional(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
        auto sec = sections_.find(section);
        if (sec == sections_.end()) return fallback;
        auto it = sec->second.find(key);
        return it == sec->second.end() ? fallback : it->second;
    }

    long integer(const std::string& section, const std::string& key) const {
        return to_long(section, key, require(section, key));
    }

    long integer_or(const std::string& section, const std::string& key, long fallback) const {
        std::string text = optional(section, key, "");
        if (text.empty()) return fallback;
        return to_long(section, key, text);
    }

private:
    long to_long(const std::string& section, const std::string& key, const std::string& text) const {
        try {
            std::size_t used = 0;
            long value = std::stol(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing characters");
            return value;
        } catch (const std::exception&) {
            throw std::invalid_argument(origin_ + ": field '" + key + "' in [" + section +
                                        "] must be an integer, got '" + text + "'");
        }
    }

    const Sections& sections_;
    std::string origin_;
};

}  // namespace

QuadraticNumber ProblemConfig::lambda3(int digit) const {
    return lambda3_num_unit * QuadraticNumber(mpz_class(digit)) /
           QuadraticNumber(lambda3_den);
}

void ProblemConfig::validate() const {
    if (base != 10) throw std::invalid_argument("config field 'base': only base 10 is supported");
    if (digit_min < 1 || digit_max > base - 1 || digit_min > digit_max)
        throw std::invalid_argument("config fields 'digit_min'/'digit_max': need 1 <= min <= max <= 9");
    if (small_search_limit < 1)
        throw std::invalid_argument("config field 'small_search_limit': must be >= 1");
    if (k_min != 1 && k_min != 2)
        throw std::invalid_argument("config field 'k_min': must be 1 or 2");
    if (rhs_stage1 < 1 || rhs_stage2 < 1)
        throw std::invalid_argument("config fields 'rhs_stage1'/'rhs_stage2': must be >= 1");
    if (binet_divisor.is_zero())
        throw std::invalid_argument("config field 'binet_divisor': must be nonzero");
    if (binet_sign != 1 && binet_sign != -1)
        throw std::invalid_argument("config field 'binet_combination': must be sum or difference");
    if (lambda3_num_unit.sign() <= 0 || lambda3_den <= 0)
        throw std::invalid_argument("config field 'lambda3': must be positive");

    // Closed-form consistency: (alpha^n + s*beta^n)/divisor must reproduce
    // the recurrence for n = 0..10.
    QuadraticNumber alpha = sequence.alpha();
    QuadraticNumber beta = sequence.beta();
    QuadraticNumber sign((mpz_class(binet_sign)));
    for (long n = 0; n <= 10; ++n) {
        QuadraticNumber closed = (alpha.pow(n) + sign * beta.pow(n)) / binet_divisor;
        QuadraticNumber expected((mpq_class(term(sequence, n))));
        if (closed != expected)
            throw std::invalid_argument(
                "config field 'binet_divisor': closed form disagrees with the recurrence at n=" +
                std::to_string(n));
    }
}

ProblemConfig ProblemConfig::builtin(const std::string& name) {
    if (name == "balancing") {
        ProblemConfig config(SequenceSpec::balancing());
        config.name = name;
        config.binet_divisor = QuadraticNumber(mpz_class(0), mpz_class(4), mpz_class(1));  // 4*sqrt2
        config.binet_sign = -1;
        config.lambda3_num_unit = QuadraticNumber(mpz_class(0), mpz_class(4), mpz_class(1));
        config.lambda3_den = 9;
        config.lambda3_text = "4*d*sqrt2/9";
        config.rhs_stage1 = 4;
        config.rhs_stage2 = 4;
        return config;
    }
    if (name == "lucas-balancing") {
        ProblemConfig config(SequenceSpec::lucas_balancing());
        config.name = name;
        config.binet_divisor = QuadraticNumber(mpz_class(2));
        config.binet_sign = 1;
        config.lambda3_num_unit = QuadraticNumber(mpz_class(2));
        config.lambda3_den = 9;
        config.lambda3_text = "2*d/9";
        config.rhs_stage1 = 3;
        config.rhs_stage2 = 3;
        return config;
    }
    throw std::invalid_argument("unknown built-in config '" + name +
                                "' (available: balancing, lucas-balancing)");
}

std::vector<std::string> ProblemConfig::builtin_names() { return {"balancing", "lucas-balancing"}; }

ProblemConfig ProblemConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    Sections sections = parse_ini(in, path);
    SectionReader reader(sections, path);

    SequenceSpec spec(mpz_class(reader.integer("sequence", "coeff_p")),
                      mpz_class(reader.integer("sequence", "coeff_q")),
                      mpz_class(reader.integer("sequence", "u0")),
                      mpz_class(reader.integer("sequence", "u1")),
                      reader.require("sequence", "name"));

    ProblemConfig config(std::move(spec));
    config.name = reader.optional("sequence", "label", config.sequence.name);

    ParsedExpression divisor = parse_exact_expression(reader.require("equation", "binet_divisor"),
                                                      "binet_divisor");
    if (divisor.has_digit_symbol)
        throw std::invalid_argument("config field 'binet_divisor': must not contain d");
    config.binet_divisor = divisor.numerator_unit / QuadraticNumber(divisor.denominator);

    std::string combination = reader.require("equation", "binet_combination");
    if (combination == "difference")
        config.binet_sign = -1;
    else if (combination == "sum")
        config.binet_sign = 1;
    else
        throw std::invalid_argument("config field 'binet_combination': must be 'difference' or 'sum'");

    std::string lambda_text = reader.require("equation", "lambda3");
    ParsedExpression lambda = parse_exact_expression(lambda_text, "lambda3");
    if (!lambda.has_digit_symbol)
        throw std::invalid_argument("config field 'lambda3': must contain the digit symbol d");
    config.lambda3_num_unit = lambda.numerator_unit;
    config.lambda3_den = lambda.denominator;
    config.lambda3_text = lambda_text;

    config.rhs_stage1 = static_cast<int>(reader.integer("equation", "rhs_stage1"));
    config.rhs_stage2 = static_cast<int>(reader.integer("equation", "rhs_stage2"));

    config.small_search_limit = reader.integer_or("search", "small_search_limit", 50);
    config.k_min = static_cast<int>(reader.integer_or("search", "k_min", 2));
    config.digit_min = static_cast<int>(reader.integer_or("search", "digit_min", 1));
    config.digit_max = static_cast<int>(reader.integer_or("search", "digit_max", 9));
    config.base = static_cast<int>(reader.integer_or("search", "base", 10));

    config.validate();
    return config;
}

}  // namespace repdiff
