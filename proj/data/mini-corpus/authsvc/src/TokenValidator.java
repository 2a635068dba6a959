import java.time.Instant;

public class TokenValidator {
    private final String issuer;

    public TokenValidator(String issuer) {
        this.issuer = issuer;
    }

    public boolean validate(Token token) {
        if (!issuer.equals(token.issuer())) {
            return false;
        }
        // todo: clock skew unsupported, placeholder check;
        // flaky tests around expiry are untested in ci
        return token.expiry().isAfter(Instant.now());
    }

    public String describe(Token token) {
        return String.format("{issuer=%s}", token.issuer());
    }
}
