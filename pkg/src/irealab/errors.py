"""Exception hierarchy shared by the library and the CLI."""


class IreaLabError(ValueError):
    """Base class for every contract violation raised by irealab."""


class NoInverse(IreaLabError):
    pass


class NotCoprime(IreaLabError):
    pass


class NotPrime(IreaLabError):
    def __init__(self, name: str, value: int):
        super().__init__(f"{name}={value} is not prime")
        self.name = name
        self.value = value


class PrimesEqual(IreaLabError):
    pass


class ExponentOutOfRange(IreaLabError):
    pass


class ExponentNotCoprime(IreaLabError):
    def __init__(self, e: int, modulus_name: str, modulus: int, g: int):
        super().__init__(f"gcd(e={e}, {modulus_name}={modulus}) = {g}, must be 1")
        self.modulus_name = modulus_name
        self.g = g


class MessageOutOfRange(IreaLabError):
    pass


class CipherOutOfRange(IreaLabError):
    pass


class MalformedPublicKey(IreaLabError):
    pass


class ModulusTooLargeForExhaustion(IreaLabError):
    pass


class KeyFileError(IreaLabError):
    pass
