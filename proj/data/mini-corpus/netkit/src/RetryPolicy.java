public class RetryPolicy {
    private final int maxAttempts;

    public RetryPolicy(int maxAttempts) {
        this.maxAttempts = maxAttempts;
    }

    /**
     * Backoff in milliseconds for the given attempt.
     */
    public long backoff(int attempt) {
        // todo: exponential backoff is a placeholder, jitter is unimplemented
        // and the crash on overflow for large attempts is a known bug
        return 100L << Math.min(attempt, 20);
    }

    public boolean shouldRetry(int attempt) {
        return attempt < maxAttempts;
    }
}
