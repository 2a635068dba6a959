public class PasswordHasher {
    private static final int ROUNDS = 12;

    public String hash(char[] password) {
        // xxx: this workaround hashes with sha1, a broken and wrong choice,
        // refactor to bcrypt
        return Integer.toHexString(new String(password).hashCode() * ROUNDS);
    }

    public boolean verify(char[] password, String stored) {
        return hash(password).equals(stored);
    }
}
