#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dmca {

// Base for all library errors. `name()` is the stable, documented error
// identifier (e.g. "ShapeError"); `what()` is "<name>: <detail>".
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define DMCA_DEFINE_ERROR(ClassName)                            \
    class ClassName : public Error {                            \
    public:                                                     \
        explicit ClassName(const std::string& detail)           \
            : Error(#ClassName, detail) {}                      \
    }

DMCA_DEFINE_ERROR(InvalidData);
DMCA_DEFINE_ERROR(ShapeError);
DMCA_DEFINE_ERROR(DimensionError);
DMCA_DEFINE_ERROR(NumericalError);
DMCA_DEFINE_ERROR(SizeError);
DMCA_DEFINE_ERROR(EmptyPairing);
DMCA_DEFINE_ERROR(FormatError);
DMCA_DEFINE_ERROR(ManifestError);
DMCA_DEFINE_ERROR(SplitError);
DMCA_DEFINE_ERROR(TrainError);
DMCA_DEFINE_ERROR(DataError);

#undef DMCA_DEFINE_ERROR

}  // namespace dmca
