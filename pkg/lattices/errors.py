"""
격자 계산 오류 정의

모든 예외는 LatticeError 를 상속하며, 명령줄/웹 인터페이스가 사용할 종료 코드를 가집니다.
- ValidationError: 입력 검증 실패 (종료 코드 2)
- GuardError: 정리의 가정이 성립하지 않는 경우 (종료 코드 3)
- BudgetError: 탐색 한도 초과 (종료 코드 4)
"""


class LatticeError(ValueError):
    exit_code = 2


class ValidationError(LatticeError):
    exit_code = 2


class GuardError(LatticeError):
    exit_code = 3


class BudgetError(LatticeError):
    exit_code = 4


# --- lattice_core ---
class NonSymmetric(ValidationError):
    pass


class Degenerate(ValidationError):
    pass


class UnknownBlock(ValidationError):
    pass


class ParseError(ValidationError):
    pass


class ZeroScale(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class NoCharacteristicElement(ValidationError):
    pass


class ZeroVector(ValidationError):
    pass


class NotPrimitive(ValidationError):
    pass


class IsotropicVector(ValidationError):
    pass


# --- discforms ---
class OddLattice(ValidationError):
    pass


class GroupTooLarge(BudgetError):
    pass


class NonUnitGaussSum(ValidationError):
    pass


# --- classifier ---
class DefiniteInput(ValidationError):
    pass


class EvenSignatureNotDivisibleBy8(ValidationError):
    pass


class SignMismatch(ValidationError):
    pass


class CharacteristicInEven(ValidationError):
    pass


class NonCyclicDiscGroup(GuardError):
    pass


class NoAmbientVectorFound(BudgetError):
    pass


class UnrealizableNorm(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


# --- oracle ---
class IndefiniteInput(ValidationError):
    pass


class RankTooLarge(ValidationError):
    pass


class SearchBudgetExceeded(BudgetError):
    pass


class NotFoundWithinBound(BudgetError):
    pass


# --- surfaces ---
class NoetherNonIntegral(ValidationError):
    pass


class IndexNonIntegral(ValidationError):
    pass


class OddB1(ValidationError):
    pass


class NegativePg(ValidationError):
    pass


class EvenParityIndexNot8Divisible(ValidationError):
    pass


class PositiveDefiniteTotal(GuardError):
    pass


class NonPositiveB2(ValidationError):
    pass


class NonPositiveHsq(ValidationError):
    pass


class OddComplementRankGuard(GuardError):
    pass


class ExoticBallQuotient(GuardError):
    pass


class UnknownClass(ValidationError):
    pass
