#pragma once

#include <stdexcept>
#include <string>

namespace semcomm {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

// Segmentation found too few foreground pixels.
class DegenerateScene : public Error {
public:
    using Error::Error;
};

// Circular mean of the foreground hues is undefined.
class DegenerateHue : public Error {
public:
    using Error::Error;
};

// Too few angular sectors hit by the mask boundary.
class DegenerateShape : public Error {
public:
    using Error::Error;
};

class MalformedPacket : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace semcomm
