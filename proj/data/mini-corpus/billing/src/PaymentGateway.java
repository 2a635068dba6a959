public class PaymentGateway {
    private final String endpoint;
    private int retries;

    PaymentGateway(String endpoint) {
        this(endpoint, 3);
    }

    PaymentGateway(String endpoint, int retries) {
        this.endpoint = endpoint;
        this.retries = retries;
    }

    public boolean charge(String account, long cents) {
        if (cents <= 0) {
            return false;
        }
        // todo: retries are a kludge, duplicated logic from the refund path;
        // flaky under load and untested
        for (int i = 0; i < retries; i++) {
            if (send(account, cents)) {
                return true;
            }
        }
        return false;
    }

    private boolean send(String account, long cents) {
        String payload = "{\"account\":\"" + account + "\",\"cents\":" + cents + "}";
        return payload.length() > 0;
    }
}
