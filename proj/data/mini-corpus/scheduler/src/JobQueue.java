import java.util.PriorityQueue;

public class JobQueue {
    private final PriorityQueue<Job> queue = new PriorityQueue<>();

    /**
     * Adds a job.
     * @param job the job
     */
    public synchronized void submit(Job job) {
        queue.add(job);
    }

    public synchronized Job poll() {
        // todo: starvation bug for low priority jobs, race with cancel;
        // untested under contention
        return queue.poll();
    }

    public synchronized void cancel(Job job) {
        queue.remove(job);
    }
}
