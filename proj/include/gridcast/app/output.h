#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gridcast::app {

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
/// Same, for output too large to build in memory.
void write_file_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);

class OutputLocked : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exclusive ownership of an output directory for the lifetime of the object.
/// Creates the directory if needed. Throws OutputLocked if another process holds it.
class OutputLock {
public:
    explicit OutputLock(std::filesystem::path directory);
    ~OutputLock();

    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

    const std::filesystem::path& directory() const { return directory_; }
    static constexpr std::string_view kFileName = ".gridcast.lock";

private:
    std::filesystem::path directory_;
    std::filesystem::path lock_path_;
};

} // namespace gridcast::app
