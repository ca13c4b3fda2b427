#ifndef E6_CLASSGROUP_HPP
#define E6_CLASSGROUP_HPP

#include <optional>
#include <vector>

#include "e6/ideal.hpp"

namespace e6 {

/// Which integral ideal stands for each class.
enum class RepChoice {
    forms,     // ideals of the reduced binary quadratic forms, O_K first
    alternate, // smallest-norm integral ideal of the class other than the form ideal
};

struct FieldContext {
    Field K;
    Ideal different;
    long h = 0;
    std::vector<Ideal> class_reps; // ascending by (norm, a, b, c) for RepChoice::forms
    RepChoice choice = RepChoice::forms;

    explicit FieldContext(long d) : K(d) {}
};

FieldContext make_field(long d, RepChoice choice = RepChoice::forms);

struct ReducedForm {
    long a, b, c;
};

/// Reduced primitive forms of discriminant disc < 0: |b| <= a <= c, b >= 0
/// when |b| = a or a = c.
std::vector<ReducedForm> reduced_forms(long disc);

/// The ideal (a, (-b + sqrt(disc))/2) of a reduced form.
Ideal form_ideal(Field const & K, ReducedForm const & f);

/// Generator of the integral ideal I, or nothing if I is not principal.
std::optional<AlgNum> principal_generator(Field const & K, Ideal const & I);

struct ClassOf {
    std::size_t index;
    AlgNum witness; // generator of I * rep^-1
};

ClassOf ideal_class_of(FieldContext const & ctx, FracIdeal const & I);

} // namespace e6

#endif
