#ifndef FOLDATLAS_ERRORS_HPP
#define FOLDATLAS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace foldatlas {

// Bad caller input (mismatched dimensions, malformed files, non-rotations...).
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct dimension_error : input_error {
    using input_error::input_error;
};

// Composition with an inner germ that does not vanish at the origin.
struct composition_domain_error : input_error {
    using input_error::input_error;
};

struct not_a_rotation_error : input_error {
    using input_error::input_error;
};

// Ridge/subparabolic queries at an umbilic: the principal frame is undefined.
struct undefined_frame_error : input_error {
    using input_error::input_error;
};

struct precondition_error : input_error {
    using input_error::input_error;
};

// Jet order too low for the requested computation.
struct insufficient_jet_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Germ beyond the classified codimension-2 range.
struct unsupported_class_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct degenerate_direction_error : input_error {
    using input_error::input_error;
};

// A cross-check the library guarantees has failed; never caller-recoverable.
struct internal_invariant_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace foldatlas

#endif
