#include "xpm/errors.hpp"

namespace xpm {

namespace {

std::string format_config(const std::string& path, int line, const std::string& what)
{
    std::string msg = "config error";
    if (!path.empty()) msg += " at '" + path + "'";
    if (line > 0) msg += " (line " + std::to_string(line) + ")";
    return msg + ": " + what;
}

std::string format_fields(const std::vector<std::string>& fields)
{
    std::string msg = "invalid physical parameters:";
    for (const auto& f : fields) msg += " " + f;
    return msg;
}

}  // namespace

ConfigError::ConfigError(std::string path, int line, const std::string& what)
    : Error(format_config(path, line, what)), path_(std::move(path)), line_(line)
{
}

ValidationError::ValidationError(std::vector<std::string> fields)
    : Error(format_fields(fields)), fields_(std::move(fields))
{
}

}  // namespace xpm
